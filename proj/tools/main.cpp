#include <string>
#include <vector>

#include "ppm/cli.hpp"

int main(int argc, char** argv) {
    return ppm::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
