// Acceptance gate: runs the twelve release criteria and prints one line per
// criterion. Exits 0 only when every criterion passes.

#include <cstdlib>
#include <iostream>
#include <string>

#include <klr/accept.hpp>

int main(int argc, char** argv) {
    klr::AcceptOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&] {
            if (i + 1 >= argc) {
                std::cerr << "missing value after " << a << "\n";
                std::exit(2);
            }
            return std::string(argv[++i]);
        };
        if (a == "--seed")
            opt.seed = static_cast<unsigned>(std::stoul(next()));
        else if (a == "--samples")
            opt.samples = std::stoi(next());
        else if (a == "--type")
            opt.only_type = next();
        else {
            std::cerr << "usage: acceptance [--seed N] [--samples N] [--type T]\n";
            return 2;
        }
    }

    std::cout << "seed: " << opt.seed << "\n";
    const auto results = klr::run_acceptance(opt);
    bool ok = true;
    for (const auto& c : results) {
        ok = ok && c.pass;
        std::cout << "criterion " << c.id << " (" << c.name << "): "
                  << (c.pass ? "PASS" : "FAIL");
        if (!c.detail.empty()) std::cout << " [" << c.detail << "]";
        std::cout << "\n";
    }
    std::cout << "acceptance: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}
