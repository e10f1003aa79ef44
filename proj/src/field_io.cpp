#include "fuyau/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace fuyau {

namespace {

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    os.write(buf, 8);
}

double get_f64(std::istream& is) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("FYFIELD: truncated body");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
    return std::bit_cast<double>(bits);
}

void put_header(std::ostream& os, const GridSpec& g, const char* kind) {
    std::ostringstream h;
    h << "FYFIELD v1 n=" << g.n << " N=" << g.N << " period=" << std::setprecision(17) << g.period
      << " kind=" << kind << '\n';
    os << h.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("FYFIELD: cannot open " + path + " for writing");
    return os;
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& f) {
    put_header(os, f.grid(), "scalar");
    for (double v : f.values()) put_f64(os, v);
}

void write_field(std::ostream& os, const HermitianField& f) {
    put_header(os, f.grid(), "hermitian");
    const int n = f.dim();
    for (std::size_t k = 0; k < f.grid().node_count(); ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) put_f64(os, f(i, j)[k].real());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) put_f64(os, f(i, j)[k].imag());
    }
}

void write_field(const std::string& path, const ScalarField& f) {
    auto os = open_out(path);
    write_field(os, f);
}

void write_field(const std::string& path, const HermitianField& f) {
    auto os = open_out(path);
    write_field(os, f);
}

AnyField read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("FYFIELD: missing header");
    std::istringstream h(line);
    std::string magic, version, tn, tN, tp, tk;
    h >> magic >> version >> tn >> tN >> tp >> tk;
    auto value_of = [](const std::string& tok, const char* key) {
        const std::string prefix = std::string(key) + "=";
        if (tok.rfind(prefix, 0) != 0) throw std::runtime_error("FYFIELD: expected " + prefix);
        return tok.substr(prefix.size());
    };
    if (magic != "FYFIELD" || version != "v1") throw std::runtime_error("FYFIELD: bad magic or version");
    GridSpec g;
    try {
        g.n = std::stoi(value_of(tn, "n"));
        g.N = std::stoi(value_of(tN, "N"));
        g.period = std::stod(value_of(tp, "period"));
    } catch (const std::logic_error&) {
        throw std::runtime_error("FYFIELD: malformed header: " + line);
    }
    g.validate();
    const std::string kind = value_of(tk, "kind");
    const std::size_t m = g.node_count();
    if (kind == "scalar") {
        std::vector<double> v(m);
        for (auto& x : v) x = get_f64(is);
        return ScalarField(g, std::move(v));
    }
    if (kind == "hermitian") {
        const int n = g.n;
        std::vector<std::vector<cplx>> upper(static_cast<std::size_t>(n * (n + 1) / 2), std::vector<cplx>(m));
        auto slot = [n](int i, int j) { return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i)); };
        for (std::size_t k = 0; k < m; ++k) {
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) upper[slot(i, j)][k] = get_f64(is);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) upper[slot(i, j)][k].imag(get_f64(is));
        }
        std::vector<ComplexField> fields;
        for (auto& u : upper) fields.emplace_back(g, std::move(u));
        return HermitianField::from_upper(g, std::move(fields));
    }
    throw std::runtime_error("FYFIELD: unknown kind " + kind);
}

AnyField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("FYFIELD: cannot open " + path);
    return read_field(is);
}

}  // namespace fuyau
