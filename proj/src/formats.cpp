#include "riccati/formats.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace riccati {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Assignment {
    std::string value;
    int line;
};

std::map<std::string, Assignment> read_assignments(std::istream& in) {
    std::map<std::string, Assignment> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw FileFormatError("expected '<key> = <value>'", line_no);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw FileFormatError("expected '<key> = <value>'", line_no);
        if (out.count(key)) throw FileFormatError("duplicate key '" + key + "'", line_no);
        out[key] = {value, line_no};
    }
    return out;
}

Expr parse_field(const std::map<std::string, Assignment>& fields, const std::string& key) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw FileFormatError("missing required key '" + key + "'", 0);
    try {
        return parse_expr(it->second.value);
    } catch (const ParseError& e) {
        throw FileFormatError("in '" + key + "': " + e.what(), it->second.line);
    }
}

Interval parse_interval(const std::map<std::string, Assignment>& fields) {
    double lo = 0.0, hi = 1.0;
    int samples = 201;
    if (const auto it = fields.find("interval"); it != fields.end()) {
        std::istringstream ss(it->second.value);
        if (!(ss >> lo >> hi))
            throw FileFormatError("interval expects '<t_lo> <t_hi>'", it->second.line);
        std::string rest;
        if (ss >> rest) throw FileFormatError("interval expects '<t_lo> <t_hi>'", it->second.line);
    }
    if (const auto it = fields.find("samples"); it != fields.end()) {
        try {
            samples = std::stoi(it->second.value);
        } catch (const std::exception&) {
            throw FileFormatError("samples expects an integer", it->second.line);
        }
    }
    try {
        return Interval(lo, hi, samples);
    } catch (const std::invalid_argument& e) {
        throw FileFormatError(e.what(), fields.count("interval") ? fields.at("interval").line : 0);
    }
}

void check_known_keys(const std::map<std::string, Assignment>& fields,
                      std::initializer_list<const char*> allowed) {
    for (const auto& [key, assign] : fields) {
        bool ok = false;
        for (const char* k : allowed)
            if (key == k) ok = true;
        if (!ok) throw FileFormatError("unknown key '" + key + "'", assign.line);
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

}  // namespace

RiccatiEquation read_equation(std::istream& in) {
    const auto fields = read_assignments(in);
    check_known_keys(fields, {"a0", "a1", "a2", "interval", "samples"});
    return RiccatiEquation(parse_field(fields, "a0"), parse_field(fields, "a1"),
                           parse_field(fields, "a2"), parse_interval(fields));
}

RiccatiEquation read_equation_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_equation(in);
}

void write_equation(std::ostream& out, const RiccatiEquation& eq) {
    out << "a0 = " << eq.a0.str() << "\n";
    out << "a1 = " << eq.a1.str() << "\n";
    out << "a2 = " << eq.a2.str() << "\n";
    out << "interval = " << format_double(eq.domain.t_lo) << " " << format_double(eq.domain.t_hi)
        << "\n";
    out << "samples = " << eq.domain.samples << "\n";
}

void write_equation_file(const std::string& path, const RiccatiEquation& eq) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    write_equation(out, eq);
}

GroupElement read_matrix(std::istream& in) {
    const auto fields = read_assignments(in);
    check_known_keys(fields, {"alpha", "beta", "gamma", "delta", "interval", "samples"});
    return GroupElement(parse_field(fields, "alpha"), parse_field(fields, "beta"),
                        parse_field(fields, "gamma"), parse_field(fields, "delta"),
                        parse_interval(fields));
}

GroupElement read_matrix_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const GroupElement& g) {
    out << "alpha = " << g.alpha.str() << "\n";
    out << "beta = " << g.beta.str() << "\n";
    out << "gamma = " << g.gamma.str() << "\n";
    out << "delta = " << g.delta.str() << "\n";
    out << "interval = " << format_double(g.domain.t_lo) << " " << format_double(g.domain.t_hi)
        << "\n";
    out << "samples = " << g.domain.samples << "\n";
}

void write_matrix_file(const std::string& path, const GroupElement& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    write_matrix(out, g);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,x\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.t) << ",";
        if (s.x.is_infinite())
            out << "inf\n";
        else
            out << format_double(s.x.value()) << "\n";
    }
    if (traj.blowup_t) out << "# blow-up at t=" << format_double(*traj.blowup_t) << "\n";
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
}

}  // namespace riccati
