// Builds the amalgamated Catch2 implementation once; every test TU links
// against this static library instead of recompiling the framework.
#include <catch2/catch_amalgamated.cpp>
