#pragma once

// HttpTransport backed by cpp-httplib. Kept in its own header so code that
// only needs the harvest loop does not pull in the HTTP stack.

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <memory>
#include <string>

#include "arxivpipe/errors.hpp"
#include "arxivpipe/oai.hpp"

namespace arxivpipe {

class HttplibTransport : public HttpTransport {
public:
    explicit HttplibTransport(int timeout_seconds = 60)
        : timeout_seconds_(timeout_seconds) {}

    HttpResponse get(const std::string& url) override {
        const auto [base, path] = split_url(url);
        httplib::Client client(base);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        client.set_follow_location(true);

        httplib::Result result = client.Get(path);
        if (!result)
            throw Error("connection to " + base + " failed: " +
                        httplib::to_string(result.error()));

        HttpResponse resp;
        resp.status = result->status;
        resp.body = result->body;
        for (const auto& [k, v] : result->headers) resp.headers.emplace_back(k, v);
        return resp;
    }

private:
    // "http://host:8080/oai?verb=x" -> {"http://host:8080", "/oai?verb=x"}
    static std::pair<std::string, std::string> split_url(const std::string& url) {
        const size_t scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            throw ConfigError("URL has no scheme: " + url);
        const size_t path_start = url.find('/', scheme_end + 3);
        if (path_start == std::string::npos) return {url, "/"};
        return {url.substr(0, path_start), url.substr(path_start)};
    }

    int timeout_seconds_;
};

}  // namespace arxivpipe
