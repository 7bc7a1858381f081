#include "qbath/run.hpp"

int main(int argc, char** argv) {
    return qbath::cli_main(argc, argv);
}
