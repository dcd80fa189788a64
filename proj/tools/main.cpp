#include <string>
#include <vector>

#include "returnlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return returnlab::run(args);
}
