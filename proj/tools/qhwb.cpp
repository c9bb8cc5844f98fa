#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qhwb/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks on quantum cohomology presentations, sphere configurations and blowup lattices"};
    std::string file;
    bool json = false;
    qhwb::dsl::RunOptions opt;
    std::string only;
    app.add_option("file", file, "input document")->required();
    app.add_flag("--json", json, "emit versioned JSON instead of text");
    app.add_flag("--sparse", opt.sparse, "missing products default to zero");
    app.add_option("--command", only, "run only commands with this keyword")
        ->check(CLI::IsMember({"check", "semisimple", "decompose", "sphere", "dehn", "config", "lattice"}));
    CLI11_PARSE(app, argc, argv);
    if (!only.empty())
        opt.only = only;

    if (const char* cap = std::getenv("QHWB_MAX_DIM")) {
        try {
            std::size_t used = 0;
            const long v = std::stol(cap, &used);
            if (used != std::string(cap).size() || v < 1)
                throw std::invalid_argument(cap);
            opt.max_dim = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            std::cerr << "QHWB_MAX_DIM must be a positive integer, got '" << cap << "'\n";
            return 2;
        }
    }

    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << file << ": cannot open\n";
        return 1;
    }
    std::ostringstream src;
    src << in.rdbuf();

    const auto r = qhwb::dsl::run_source(src.str(), opt);
    if (json)
        std::cout << r.json.dump(2) << "\n";
    else if (r.json.contains("diagnostics"))
        std::cerr << file << ":" << r.text;
    else
        std::cout << r.text;
    return r.exit_code;
}
