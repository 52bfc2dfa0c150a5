#include "cli_app.hpp"

int main(int argc, char** argv) { return eisl::cli::run(argc, argv); }
