#pragma once

#include <filesystem>
#include <string>

#include "modcert/json_util.hpp"
#include "modcert/qexpansion/newform.hpp"

namespace modcert::pipeline {

inline constexpr const char* kDefaultRemoteBaseUrl = "https://www.lmfdb.org";

struct RemoteOptions {
    std::filesystem::path cache_dir;
    bool offline = true;
    std::string base_url = kDefaultRemoteBaseUrl;
    int timeout_seconds = 20;
};

/// Cache location for a label: <cache_dir>/<label>.json.
std::filesystem::path cache_path(const RemoteOptions& opts, const std::string& label);

/// Newform by database label. A cached response is used when present;
/// otherwise, unless offline, GET <base_url>/api/mf_newforms/?label=...&_format=json
/// and store the body verbatim in the cache. Throws RemoteUnavailable or
/// SchemaMismatch.
qexpansion::NewformDescriptor fetch_remote_newform(const std::string& label, const RemoteOptions& opts);

/// Parses an mf_newforms API response. Only dimension-1 (rational) forms
/// are accepted, since `traces` then equals the eigenvalues.
qexpansion::NewformDescriptor newform_from_remote_response(const std::string& body, const std::string& label);

}  // namespace modcert::pipeline
