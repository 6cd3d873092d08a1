#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "modcert/pipeline/remote.hpp"

#include <algorithm>
#include <cctype>

#include "modcert/arith/prime_field.hpp"
#include "modcert/error.hpp"
#include "modcert/pipeline/digest.hpp"

namespace modcert::pipeline {

namespace {

void check_label(const std::string& label) {
    bool ok = !label.empty() && std::all_of(label.begin(), label.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '.' || c == '-' || c == '_';
    });
    if (!ok || label.front() == '.') throw Error(Errc::InvalidArgument, "invalid newform label '" + label + "'");
}

}  // namespace

std::filesystem::path cache_path(const RemoteOptions& opts, const std::string& label) {
    check_label(label);
    return opts.cache_dir / (label + ".json");
}

qexpansion::NewformDescriptor newform_from_remote_response(const std::string& body, const std::string& label) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(Errc::SchemaMismatch, std::string("remote response is not JSON: ") + e.what());
    }
    try {
        const json& data = j.at("data");
        if (!data.is_array() || data.empty()) throw Error(Errc::SchemaMismatch, "no newform with label " + label);
        const json& item = data.at(0);
        if (item.contains("label") && item.at("label").get<std::string>() != label)
            throw Error(Errc::SchemaMismatch, "response label " + item.at("label").get<std::string>() +
                                                  " does not match " + label);
        if (item.at("dim").get<int>() != 1)
            throw Error(Errc::SchemaMismatch, "only rational (dimension 1) newforms are supported");
        qexpansion::NewformDescriptor nf;
        nf.level = item.at("level").get<std::uint64_t>();
        nf.weight = item.at("weight").get<int>();
        nf.coeff_degree = 1;
        nf.source = qexpansion::NewformSource::Remote;
        nf.label = label;
        nf.provenance = "sha256:" + sha256_hex(body);
        const json& traces = item.at("traces");  // a_1, a_2, ...
        if (traces.empty() || bigint_from_json(traces.at(0)) != 1)
            throw Error(Errc::SchemaMismatch, "traces must start with a_1 = 1");
        for (std::size_t n = 2; n <= traces.size(); ++n)
            if (arith::is_prime_u64(n))
                nf.eigenvalues.emplace(n, congruence::AlgebraicInteger::rational(bigint_from_json(traces.at(n - 1))));
        nf.validate();
        return nf;
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaMismatch, std::string("remote response: ") + e.what());
    }
}

qexpansion::NewformDescriptor fetch_remote_newform(const std::string& label, const RemoteOptions& opts) {
    const auto path = cache_path(opts, label);
    if (std::filesystem::exists(path)) return newform_from_remote_response(read_text_file(path), label);
    if (opts.offline)
        throw Error(Errc::RemoteUnavailable, "label " + label + " not cached and offline mode is on");

    httplib::Client client(opts.base_url);
    client.set_connection_timeout(opts.timeout_seconds, 0);
    client.set_read_timeout(opts.timeout_seconds, 0);
    client.set_follow_location(true);
    auto res = client.Get("/api/mf_newforms/?label=" + label + "&_format=json");
    if (!res) throw Error(Errc::RemoteUnavailable, opts.base_url + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw Error(Errc::RemoteUnavailable, opts.base_url + " returned HTTP " + std::to_string(res->status));

    auto nf = newform_from_remote_response(res->body, label);
    write_text_file(path, res->body);
    return nf;
}

}  // namespace modcert::pipeline
