#include "fieldtrends/cli.hpp"

int main(int argc, char** argv) { return fieldtrends::run(argc, argv); }
