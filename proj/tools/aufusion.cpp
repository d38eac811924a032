#include <string>
#include <vector>

#include <aufusion/cli.hpp>

int main(int argc, char **argv)
{
    return aufusion::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
