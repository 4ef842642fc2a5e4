#include <facetscope/service.hpp>

#include <httplib.h>

#include <cstdio>
#include <stdexcept>

namespace facetscope {

struct HttpServer::Impl {
    const SearchService& service;
    ServiceConfig config;
    httplib::Server server;
    int bound_port = -1;

    Impl(const SearchService& s, ServiceConfig c) : service(s), config(std::move(c)) {}
};

HttpServer::HttpServer(const SearchService& service, const ServiceConfig& config)
    : impl_(std::make_unique<Impl>(service, config)) {
    auto& server = impl_->server;
    const std::string origin = impl_->config.cors_origin;

    server.set_default_headers({{"Access-Control-Allow-Origin", origin}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    server.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
        Params params;
        for (const auto& [key, value] : req.params) params.emplace(key, value);
        const ApiResponse response = impl_->service.dispatch(req.path, params);
        res.status = response.status;
        char elapsed[32];
        std::snprintf(elapsed, sizeof elapsed, "%.3f", response.elapsed_ms);
        res.set_header("X-Elapsed-Ms", elapsed);
        res.set_content(response.text(), "application/json; charset=utf-8");
    });

    if (impl_->config.static_dir) {
        if (!server.set_mount_point("/", impl_->config.static_dir->string())) {
            throw std::runtime_error("cannot serve static assets from " + impl_->config.static_dir->string());
        }
    }
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::bind() {
    auto& impl = *impl_;
    if (impl.config.port == 0) {
        impl.bound_port = impl.server.bind_to_any_port(impl.config.host);
    } else if (impl.server.bind_to_port(impl.config.host, impl.config.port)) {
        impl.bound_port = impl.config.port;
    }
    if (impl.bound_port <= 0) {
        throw std::runtime_error("cannot bind " + impl.config.host + ":" + std::to_string(impl.config.port));
    }
    return impl.bound_port;
}

void HttpServer::listen() {
    if (impl_->bound_port <= 0) throw std::logic_error("HttpServer::listen called before bind");
    impl_->server.listen_after_bind();
}

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const {
    return impl_->server.is_running();
}

}  // namespace facetscope
