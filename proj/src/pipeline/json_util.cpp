#include "modcert/json_util.hpp"

#include <fstream>
#include <sstream>

#include "modcert/error.hpp"

namespace modcert {

using arith::BigInt;

json bigint_to_json(const BigInt& v) {
    std::string s = v.get_str();
    std::size_t digits = s.size() - (s[0] == '-' ? 1 : 0);
    if (digits > 18) return s;
    return arith::to_i64(v);
}

BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return arith::from_u64(j.get<std::uint64_t>());
        return arith::from_i64(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) != 0)
            throw Error(Errc::SchemaMismatch, "not a decimal integer: " + j.get<std::string>());
        return v;
    }
    throw Error(Errc::SchemaMismatch, "expected integer, got " + j.dump());
}

json poly_to_json(const arith::IntPolynomial& f) {
    json out = json::array();
    for (const auto& c : f.coefficients()) out.push_back(bigint_to_json(c));
    return out;
}

arith::IntPolynomial poly_from_json(const json& j) {
    if (!j.is_array()) throw Error(Errc::SchemaMismatch, "polynomial must be a coefficient array");
    std::vector<BigInt> c;
    for (const auto& v : j) c.push_back(bigint_from_json(v));
    return arith::IntPolynomial(std::move(c));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
    std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::SchemaMismatch, path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
        out << text;
        if (!out) throw Error(Errc::Io, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace modcert
