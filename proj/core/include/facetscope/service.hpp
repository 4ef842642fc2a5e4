#pragma once

#include <facetscope/analytics.hpp>
#include <facetscope/index.hpp>
#include <facetscope/vocabulary.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace facetscope {

inline constexpr std::size_t kMaxPageSize = 100;

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path index_dir;
    std::optional<std::filesystem::path> gazetteer;
    std::map<std::string, std::filesystem::path> vocabularies;  ///< id -> file
    std::optional<std::filesystem::path> static_dir;
    std::optional<int> reference_year;
    std::size_t page_size = 10;
    std::string cors_origin = "*";

    /// Keys: host, port, index, gazetteer, vocabularies {id: path}, static, reference_year,
    /// page_size, cors_origin. Relative paths resolve against `base_dir`.
    static ServiceConfig from_json(const nlohmann::json& json, const std::filesystem::path& base_dir = {});
    static ServiceConfig load(const std::filesystem::path& path);

    /// Throws std::invalid_argument for a bad port or page size and std::runtime_error naming
    /// any configured path that is not readable.
    void validate() const;
};

/// Query-string parameters of one request.
using Params = std::map<std::string, std::string, std::less<>>;

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
    double elapsed_ms = 0.0;

    std::string text() const { return body.dump(); }
};

struct ServiceOptions {
    std::optional<int> reference_year;  ///< defaults to the current calendar year
    std::size_t page_size = 10;
};

/// Stateless request handlers over an immutable index. Every handler is const and safe to call
/// from any number of threads at once; bodies are a pure function of the index, the request
/// and the reference year (elapsed time is reported separately).
class SearchService {
public:
    SearchService(Index index, Gazetteer gazetteer, VocabularyRegistry vocabularies, ServiceOptions options = {});

    static SearchService from_config(const ServiceConfig& config);

    const Index& index() const noexcept { return index_; }
    const Gazetteer& gazetteer() const noexcept { return gazetteer_; }
    const VocabularyRegistry& vocabularies() const noexcept { return vocabularies_; }
    int reference_year() const;

    /// Params: q, type, database, person, subject, from, to, page, size.
    ApiResponse handle_search(const Params& params) const;
    /// kind in {facets, temporal, spatial, coauthors, linking}; unknown kinds give 404.
    ApiResponse handle_aggregates(std::string_view kind, const Params& params) const;
    /// Params: term, vocab ("recommender" selects the co-word recommender).
    ApiResponse handle_terms(const Params& params) const;

    /// Routes "/api/<endpoint>" to the handlers above; 404 for other paths.
    ApiResponse dispatch(std::string_view path, const Params& params) const;

private:
    Index index_;
    Gazetteer gazetteer_;
    VocabularyRegistry vocabularies_;
    ServiceOptions options_;
};

/// Blocking HTTP front end. Serves /api/* through SearchService and static files from
/// `static_dir` at "/" when configured.
class HttpServer {
public:
    HttpServer(const SearchService& service, const ServiceConfig& config);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the configured host/port (0 picks a free port). Returns the bound port.
    int bind();
    /// Serves until stop(); bind() must have succeeded.
    void listen();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace facetscope
