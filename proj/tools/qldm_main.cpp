#include <string>
#include <vector>

#include "qldm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qldm::cli_main(args);
}
