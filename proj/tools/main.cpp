#include <string>
#include <vector>

#include "iastab/experiment.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return iastab::cli_main(args);
}
