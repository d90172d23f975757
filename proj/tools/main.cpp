#include "cli.hpp"

int main(int argc, char** argv) { return ybcli::main_entry(argc, argv); }
