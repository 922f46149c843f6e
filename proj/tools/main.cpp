#include <fstream>
#include <iostream>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const iex::cli::CliResult res = iex::cli::run_command(args);
    if (res.out_path.empty()) {
        std::cout << res.output;
    } else {
        std::ofstream out(res.out_path);
        if (!out) {
            std::cerr << "cannot open " << res.out_path << "\n";
            return 2;
        }
        out << res.output;
    }
    return res.code;
}
