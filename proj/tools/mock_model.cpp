// Stand-in model process for the stdio adapter: reads a prompt on stdin and
// prints the deterministic mock response.
#include "extsleuth/report/model.hpp"

#include <iostream>
#include <iterator>
#include <string>

int main(int argc, char** argv)
{
    unsigned seed = 2;
    bool fail = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--fail")
            fail = true;
        else
            seed = static_cast<unsigned>(std::stoul(a));
    }
    std::string prompt{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    if (fail) {
        std::cerr << "mock model: asked to fail\n";
        return 1;
    }
    std::cout << extsleuth::report::mock_model_response(prompt, seed);
    return 0;
}
