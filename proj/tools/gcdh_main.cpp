#include <iostream>

#include "gcdh/run.hpp"

int main(int argc, char** argv)
{
    return gcdh::main_entry(argc, argv, std::cout, std::cerr);
}
