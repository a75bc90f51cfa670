#include "mwloc/cli.h"

int main(int argc, char** argv) { return mwloc::run(argc, argv); }
