#include "refgap/cli.hpp"

int main(int argc, char** argv) {
    return refgap::cli::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
