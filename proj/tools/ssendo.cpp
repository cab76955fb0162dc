#include <ssendo/cli.hpp>

int main(int argc, char** argv)
{
    return ssendo::run_cli(argc, argv);
}
