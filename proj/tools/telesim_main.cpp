#include "telesim/cli.hpp"

int main(int argc, char** argv) {
    return telesim::cli::main_cli(argc, argv);
}
