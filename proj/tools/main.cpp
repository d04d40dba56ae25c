#include "disclab/report.hpp"

int main(int argc, char** argv) { return disclab::cli_main(argc, argv); }
