#include "nsm/harness.hpp"

int main(int argc, char** argv) { return nsm::cli_main(argc, argv); }
