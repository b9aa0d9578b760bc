#include <vector>

#include "sigevo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sigevo::cli::run(args);
}
