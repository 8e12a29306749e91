#include <filesystem>
#include <fstream>
#include <string>

#include <httplib.h>

#include "gifsent/corpus.hpp"
#include "gifsent/log.hpp"

namespace gifsent {

namespace {

namespace fs = std::filesystem;

std::string substitute(const std::string& tmpl, const std::string& gif_id) {
    std::string out = tmpl;
    const std::string placeholder = "{gif_id}";
    size_t pos;
    while ((pos = out.find(placeholder)) != std::string::npos)
        out.replace(pos, placeholder.size(), gif_id);
    return out;
}

/// Splits "http://host:port/path" into origin and path. Only http is
/// supported; the bundled client is built without TLS.
bool split_url(const std::string& url, std::string& origin, std::string& path) {
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) != 0) return false;
    size_t host_start = scheme.size();
    size_t path_start = url.find('/', host_start);
    if (path_start == std::string::npos) {
        origin = url;
        path = "/";
    } else {
        origin = url.substr(0, path_start);
        path = url.substr(path_start);
    }
    return origin.size() > scheme.size();
}

std::string extension_of(const std::string& path) {
    auto ext = fs::path(path).extension().string();
    if (ext == ".mp4" || ext == ".avi" || ext == ".gif") return ext;
    return ".mp4";
}

} // namespace

std::string fetch_media_http(const std::string& gif_id, const std::string& cache_dir,
                             const MediaResolveOptions& options) {
    std::string url = substitute(options.url_template, gif_id);
    std::string origin, path;
    if (!split_url(url, origin, path))
        return "unsupported media URL (need http://host/path): " + url;

    httplib::Client client(origin);
    client.set_connection_timeout(0, options.timeout_ms * 1000);
    client.set_read_timeout(0, options.timeout_ms * 1000);
    client.set_follow_location(true);

    auto res = client.Get(path);
    if (!res) return "fetch failed: " + url + " (" + httplib::to_string(res.error()) + ")";
    if (res->status != 200)
        return "fetch failed: " + url + " (HTTP " + std::to_string(res->status) + ")";
    if (res->body.empty()) return "fetch returned an empty body: " + url;

    fs::path target = fs::path(cache_dir) / (gif_id + extension_of(path));
    std::ofstream out(target, std::ios::binary);
    if (!out) return "cannot write fetched media: " + target.string();
    out.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
    out.close();
    Log::info("fetch: ", gif_id, ": ", res->body.size(), " bytes from ", url);
    return "";
}

} // namespace gifsent
