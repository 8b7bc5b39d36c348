#include "biphoton/cli/commands.hpp"

int main(int argc, char** argv) {
    return biphoton::cli::dispatch(argc, argv);
}
