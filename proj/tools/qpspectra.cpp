#include "cli/run.hpp"

int main(int argc, char** argv) { return qps::cli::main_entry(argc, argv); }
