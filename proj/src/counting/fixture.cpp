#include "modcert/counting/fixture.hpp"

#include <string>

#include "modcert/error.hpp"

namespace modcert::counting {

namespace {

WeierstrassFamily family_from_json(const json& j) {
    if (!j.contains("a_coeffs") || !j.contains("b_coeffs"))
        throw Error(Errc::SchemaMismatch, "fibration needs a_coeffs and b_coeffs");
    WeierstrassFamily w;
    w.a4 = poly_from_json(j.at("a_coeffs"));
    w.a6 = poly_from_json(j.at("b_coeffs"));
    if (j.contains("a2_coeffs")) w.a2 = poly_from_json(j.at("a2_coeffs"));
    return w;
}

EllipticFibration fibration_from_json(const json& j, const std::string& fallback_label) {
    std::string label = j.value("label", fallback_label);
    std::optional<WeierstrassFamily> inf;
    if (j.contains("model_at_infinity") && !j.at("model_at_infinity").is_null())
        inf = family_from_json(j.at("model_at_infinity"));
    return EllipticFibration(label, family_from_json(j), inf);
}

}  // namespace

FiberProductVariety fiber_product_from_json(const json& j) {
    try {
        std::string label = j.value("label", std::string("fiber-product"));
        bool self_product = !j.contains("fibrations");
        EllipticFibration f1 = self_product ? fibration_from_json(j, label)
                                            : fibration_from_json(j.at("fibrations").at(0), label + "/1");
        EllipticFibration f2 = self_product ? f1 : fibration_from_json(j.at("fibrations").at(1), label + "/2");

        FiberProductVariety X{label, f1, f2, {}, 1, BadFiberMode::Skip, self_product, std::nullopt};
        for (const auto& p : j.at("bad_primes")) X.bad_primes.insert(p.get<std::uint64_t>());
        X.conductor = j.at("conductor").get<std::uint64_t>();
        std::string mode = j.value("bad_fiber_mode", std::string("skip"));
        if (mode == "skip")
            X.bad_fiber_mode = BadFiberMode::Skip;
        else if (mode == "corrected")
            X.bad_fiber_mode = BadFiberMode::Corrected;
        else
            throw Error(Errc::SchemaMismatch, "bad_fiber_mode must be skip or corrected, got " + mode);
        X.tate_correction = j.value("tate_correction", self_product);
        if (j.contains("expected_eta_pair") && j.at("expected_eta_pair").is_string())
            X.expected_eta_pair = j.at("expected_eta_pair").get<std::string>();
        X.validate();
        return X;
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaMismatch, std::string("fibration fixture: ") + e.what());
    }
}

FiberProductVariety load_fiber_product(const std::filesystem::path& path) {
    return fiber_product_from_json(read_json_file(path));
}

json trace_system_to_json(const congruence::TraceSystem& T) {
    json traces = json::object();
    for (const auto& [q, a] : T.traces()) traces[std::to_string(q)] = a;
    json j{{"conductor", T.conductor()}, {"weight", T.weight()}, {"traces", traces}};
    if (!T.is_pure()) j["pure"] = false;
    return j;
}

congruence::TraceSystem trace_system_from_json(const json& j) {
    try {
        congruence::TraceSystem::Table table;
        for (const auto& [key, value] : j.at("traces").items()) {
            std::size_t used = 0;
            std::uint64_t q = std::stoull(key, &used);
            if (used != key.size()) throw Error(Errc::SchemaMismatch, "trace key '" + key + "'");
            table.emplace(q, value.get<std::int64_t>());
        }
        const auto conductor = j.at("conductor").get<std::uint64_t>();
        const int weight = j.value("weight", 4);
        if (!j.value("pure", true)) return congruence::TraceSystem::impure(conductor, weight, std::move(table));
        return congruence::TraceSystem(conductor, weight, std::move(table));
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaMismatch, std::string("trace file: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(Errc::SchemaMismatch, "trace file: non-numeric key");
    }
}

}  // namespace modcert::counting
