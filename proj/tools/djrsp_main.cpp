#include <djrsp/cli.hpp>

int main(int argc, char** argv) { return djrsp::run_cli(argc, argv); }
