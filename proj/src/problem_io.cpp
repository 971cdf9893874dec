#include "soscert/problem_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "soscert/poly_text.hpp"

namespace soscert {

ProblemFile parse_problem_text(const std::string& text) {
    ProblemFile pf;
    std::istringstream is(text);
    std::string line, body;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::string meta = line.substr(first + 1);
            auto colon = meta.find(':');
            if (colon != std::string::npos) {
                auto trim = [](std::string s) {
                    auto b = s.find_first_not_of(" \t");
                    auto e = s.find_last_not_of(" \t");
                    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
                };
                pf.metadata[trim(meta.substr(0, colon))] = trim(meta.substr(colon + 1));
            }
            continue;
        }
        body += line;
        body += " ";
    }
    int nvars = 0;
    auto it = pf.metadata.find("nvars");
    if (it != pf.metadata.end()) {
        nvars = std::stoi(it->second);
    } else {
        nvars = scan_max_variable_index(body);
        pf.metadata["nvars"] = std::to_string(nvars);
    }
    if (nvars < 1) throw std::runtime_error("problem file: could not determine nvars");
    pf.f = parse_polynomial(body, nvars);
    return pf;
}

ProblemFile read_problem_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    try {
        return parse_problem_text(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_problem_file(const std::string& path, const Polynomial& f,
                        const std::map<std::string, std::string>& metadata) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    if (metadata.find("nvars") == metadata.end())
        os << "# nvars: " << f.nvars() << "\n";
    for (auto& [k, v] : metadata) os << "# " << k << ": " << v << "\n";
    os << print_polynomial(f) << "\n";
}

}  // namespace soscert
