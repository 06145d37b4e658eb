#include "commands.hpp"

int main(int argc, char** argv) {
    return lambdabloch::cli::run(argc, argv);
}
