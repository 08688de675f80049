#include "sclab/cli.hpp"

int main(int argc, char** argv) { return sclab::dispatch(argc, argv); }
