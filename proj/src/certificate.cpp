#include "soscert/certificate.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "soscert/poly_text.hpp"

namespace soscert {

Verdict check_certificate(const Polynomial& f, const SosCertificate& cert) {
    Verdict v;
    v.identity_residual = Polynomial(f.nvars());
    if (cert.nvars != f.nvars()) {
        // arity mismatch: report as an identity failure with residual f
        v.identity_residual = f;
        v.ok = false;
        return v;
    }
    for (std::size_t i = 0; i < cert.squares.size(); ++i)
        if (cert.squares[i].weight < 0) v.weight_violations.push_back(i);
    Polynomial expansion(f.nvars());
    for (auto& s : cert.squares) expansion = expansion + (s.square * s.square).scaled(s.weight);
    v.identity_residual = f - expansion;
    v.ok = v.identity_residual.is_zero() && v.weight_violations.empty();
    return v;
}

SosCertificate gram_to_certificate(const GramRational& g, const ExactLdlt& f) {
    if (!f.psd) throw std::domain_error("gram_to_certificate: matrix is not PSD");
    SosCertificate cert;
    cert.nvars = g.basis.nvars;
    const std::size_t m = g.dim();
    for (std::size_t i = 0; i < m; ++i) {
        if (f.D[i] == 0) continue;
        // q_i = sum_j L[j][i] * basis[perm[j]]
        Polynomial q(g.basis.nvars);
        for (std::size_t j = i; j < m; ++j) {
            if (f.L[j][i] == 0) continue;
            q.add_term(g.basis.monomials[f.perm[j]], f.L[j][i]);
        }
        cert.squares.push_back({f.D[i], std::move(q)});
    }
    return cert;
}

SosCertificate gram_to_certificate(const GramRational& g) {
    return gram_to_certificate(g, exact_ldlt(g.entries));
}

std::string certificate_to_string(const SosCertificate& cert) {
    std::ostringstream os;
    os << cert.nvars << " " << cert.squares.size() << "\n";
    for (auto& s : cert.squares) {
        os << rat_num(s.weight).str() << "/" << rat_den(s.weight).str() << "\t"
           << print_polynomial(s.square) << "\n";
    }
    return os.str();
}

SosCertificate parse_certificate(const std::string& text) {
    std::istringstream is(text);
    SosCertificate cert;
    std::size_t k = 0;
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("certificate: missing header");
    {
        std::istringstream hs(header);
        if (!(hs >> cert.nvars >> k)) throw std::runtime_error("certificate: malformed header");
        if (cert.nvars < 0) throw std::runtime_error("certificate: negative nvars");
    }
    std::string line;
    while (cert.squares.size() < k && std::getline(is, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::runtime_error("certificate: missing tab separator");
        std::string wtext = line.substr(0, tab);
        Rational w;
        auto slash = wtext.find('/');
        if (slash == std::string::npos) {
            w = Rational(Int(wtext));
        } else {
            Int den(wtext.substr(slash + 1));
            if (den == 0) throw std::runtime_error("certificate: zero weight denominator");
            w = Rational(Int(wtext.substr(0, slash)), den);
        }
        Polynomial q = parse_polynomial(line.substr(tab + 1), cert.nvars);
        cert.squares.push_back({w, std::move(q)});
    }
    if (cert.squares.size() != k) throw std::runtime_error("certificate: truncated square list");
    return cert;
}

void write_certificate_file(const std::string& path, const SosCertificate& cert) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << certificate_to_string(cert);
}

SosCertificate read_certificate_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_certificate(buf.str());
}

}  // namespace soscert
