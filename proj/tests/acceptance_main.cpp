#include <iostream>

#include "pfargeo/selftest.hpp"

int main() { return pfargeo::run_selftest(std::cout); }
