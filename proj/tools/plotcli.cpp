#include <string>
#include <vector>

#include "plotkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return plotkit::run_cli(args);
}
