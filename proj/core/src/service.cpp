#include <facetscope/payloads.hpp>
#include <facetscope/service.hpp>

#include <charconv>
#include <chrono>
#include <fstream>

namespace facetscope {

namespace {

struct BadRequest : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotFound : std::out_of_range {
    using std::out_of_range::out_of_range;
};

std::optional<std::string> text_param(const Params& params, std::string_view name) {
    auto it = params.find(name);
    if (it == params.end() || collapse_whitespace(it->second).empty()) return std::nullopt;
    return it->second;
}

std::optional<long long> int_param(const Params& params, std::string_view name) {
    auto text = text_param(params, name);
    if (!text) return std::nullopt;
    const std::string trimmed = collapse_whitespace(*text);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size()) {
        throw BadRequest("parameter '" + std::string(name) + "' must be an integer");
    }
    return value;
}

std::optional<int> year_param(const Params& params, std::string_view name) {
    auto value = int_param(params, name);
    if (!value) return std::nullopt;
    if (*value < kMinYear || *value > kMaxYear) {
        throw BadRequest("parameter '" + std::string(name) + "' must be a year in [1000, 3000]");
    }
    return static_cast<int>(*value);
}

FacetFilters filters_from(const Params& params) {
    FacetFilters f;
    f.info_type = text_param(params, "type");
    f.database = text_param(params, "database");
    f.person = text_param(params, "person");
    f.subject = text_param(params, "subject");
    f.from_year = year_param(params, "from");
    f.to_year = year_param(params, "to");
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw BadRequest(e.what());
    }
    return f;
}

RecordField facet_field_param(const Params& params) {
    const std::string name = text_param(params, "field").value_or("subjects");
    std::optional<RecordField> field = parse_record_field(name);
    if (!field) {
        if (auto qf = parse_query_field(name)) field = target_field(*qf);
    }
    if (!field) throw BadRequest("unknown field '" + name + "'");
    return *field;
}

struct QueryContext {
    QueryAst ast;
    FacetFilters filters;
    ResultSet rs;
};

QueryContext run_query(const Params& params, const Index& index) {
    QueryContext ctx;
    ctx.ast = parse_query(text_param(params, "q").value_or(""));
    ctx.filters = filters_from(params);
    ctx.rs = evaluate(ctx.ast, ctx.filters, index);
    return ctx;
}

nlohmann::json echo(const QueryContext& ctx) {
    return {{"query", print_query(ctx.ast)}, {"filters", to_json(ctx.filters)}, {"total", ctx.rs.total()}};
}

nlohmann::json error_body(const std::string& message) {
    return {{"error", message}};
}

template <class Handler>
ApiResponse guarded(const Params& params, Handler&& handler) {
    const auto start = std::chrono::steady_clock::now();
    ApiResponse response;
    try {
        response.body = handler();
        response.status = 200;
    } catch (const QuerySyntaxError& e) {
        response.status = 400;
        response.body = {{"error", e.detail()}, {"offset", e.offset()}};
    } catch (const UnsupportedQueryError& e) {
        response.status = 400;
        response.body = error_body(e.what());
    } catch (const NotFound& e) {
        response.status = 404;
        response.body = error_body(e.what());
    } catch (const VocabularyNotFound& e) {
        response.status = 404;
        response.body = error_body(e.what());
    } catch (const std::invalid_argument& e) {
        response.status = 400;
        response.body = error_body(e.what());
    } catch (const std::exception& e) {
        response.status = 500;
        response.body = error_body(e.what());
    }
    response.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (text_param(params, "timing") == "1") response.body["elapsed_ms"] = response.elapsed_ms;
    return response;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    std::filesystem::path p(value);
    if (p.is_relative() && !base.empty()) p = base / p;
    return p;
}

void require_readable(const std::filesystem::path& path, const char* what) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw std::runtime_error(std::string(what) + " not found: " + path.string());
    }
    if (!std::filesystem::is_directory(path, ec)) {
        std::ifstream probe(path);
        if (!probe) throw std::runtime_error(std::string(what) + " not readable: " + path.string());
    }
}

}  // namespace

ServiceConfig ServiceConfig::from_json(const nlohmann::json& json, const std::filesystem::path& base_dir) {
    if (!json.is_object()) throw std::invalid_argument("service config must be a JSON object");
    ServiceConfig c;
    try {
        c.host = json.value("host", c.host);
        c.port = json.value("port", c.port);
        if (json.contains("index")) c.index_dir = resolve(base_dir, json.at("index").get<std::string>());
        if (json.contains("gazetteer")) c.gazetteer = resolve(base_dir, json.at("gazetteer").get<std::string>());
        if (json.contains("static")) c.static_dir = resolve(base_dir, json.at("static").get<std::string>());
        if (json.contains("vocabularies")) {
            for (const auto& [id, path] : json.at("vocabularies").items()) {
                c.vocabularies[id] = resolve(base_dir, path.get<std::string>());
            }
        }
        if (json.contains("reference_year") && !json.at("reference_year").is_null()) {
            c.reference_year = json.at("reference_year").get<int>();
        }
        c.page_size = json.value("page_size", c.page_size);
        c.cors_origin = json.value("cors_origin", c.cors_origin);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid service config: ") + e.what());
    }
    return c;
}

ServiceConfig ServiceConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    nlohmann::json json;
    try {
        json = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed config " + path.string() + ": " + e.what());
    }
    return from_json(json, path.parent_path());
}

void ServiceConfig::validate() const {
    if (port < 0 || port > 65535) throw std::invalid_argument("port must be in [1, 65535]");
    if (page_size == 0 || page_size > kMaxPageSize) throw std::invalid_argument("page_size must be in [1, 100]");
    if (reference_year && (*reference_year < kMinYear || *reference_year > kMaxYear)) {
        throw std::invalid_argument("reference_year must be in [1000, 3000]");
    }
    if (index_dir.empty()) throw std::invalid_argument("index directory is required");
    require_readable(index_dir / "manifest.json", "index manifest");
    if (gazetteer) require_readable(*gazetteer, "gazetteer");
    if (static_dir) require_readable(*static_dir, "static asset directory");
    for (const auto& [id, path] : vocabularies) require_readable(path, ("vocabulary '" + id + "'").c_str());
}

SearchService::SearchService(Index index, Gazetteer gazetteer, VocabularyRegistry vocabularies,
                             ServiceOptions options)
    : index_(std::move(index)),
      gazetteer_(std::move(gazetteer)),
      vocabularies_(std::move(vocabularies)),
      options_(options) {}

SearchService SearchService::from_config(const ServiceConfig& config) {
    config.validate();
    Gazetteer gazetteer = config.gazetteer ? Gazetteer::load(*config.gazetteer) : Gazetteer{};
    VocabularyRegistry registry;
    for (const auto& [id, path] : config.vocabularies) registry.add(Vocabulary::load(id, path));
    return SearchService(load_index(config.index_dir), std::move(gazetteer), std::move(registry),
                         ServiceOptions{config.reference_year, config.page_size});
}

int SearchService::reference_year() const {
    return options_.reference_year.value_or(current_year());
}

ApiResponse SearchService::handle_search(const Params& params) const {
    return guarded(params, [&]() -> nlohmann::json {
        const auto page = int_param(params, "page").value_or(0);
        const auto size = int_param(params, "size").value_or(static_cast<long long>(options_.page_size));
        if (page < 0) throw BadRequest("page must be non-negative");
        if (size < 1 || size > static_cast<long long>(kMaxPageSize)) throw BadRequest("size must be in [1, 100]");

        const QueryContext ctx = run_query(params, index_);
        nlohmann::json records = nlohmann::json::array();
        for (DocOrdinal d : result_page(index_, ctx.rs, static_cast<std::size_t>(page), static_cast<std::size_t>(size))) {
            records.push_back(record_to_json(index_.record(d)));
        }
        nlohmann::json body = echo(ctx);
        body["page"] = page;
        body["size"] = size;
        body["records"] = std::move(records);
        return body;
    });
}

ApiResponse SearchService::handle_aggregates(std::string_view kind, const Params& params) const {
    return guarded(params, [&]() -> nlohmann::json {
        if (kind != "facets" && kind != "temporal" && kind != "spatial" && kind != "coauthors" && kind != "linking") {
            throw NotFound("unknown aggregate '" + std::string(kind) + "'");
        }
        if (kind == "linking") {
            const QueryAst ast = parse_query(text_param(params, "q").value_or(""));
            const FacetFilters filters = filters_from(params);
            nlohmann::json body = to_json(build_linking_table(ast, filters, index_), index_);
            body["query"] = print_query(ast);
            body["filters"] = to_json(filters);
            return body;
        }

        // Parameters specific to one kind are validated before evaluating the query.
        RecordField field = RecordField::subjects;
        std::size_t k = kTopFacetLimit;
        int ref_year = 0;
        if (kind == "facets") {
            field = facet_field_param(params);
            const auto kk = int_param(params, "k").value_or(static_cast<long long>(kTopFacetLimit));
            if (kk < 1) throw BadRequest("k must be at least 1");
            k = static_cast<std::size_t>(kk);
        } else if (kind == "temporal") {
            ref_year = year_param(params, "ref_year").value_or(reference_year());
        }

        const QueryContext ctx = run_query(params, index_);
        nlohmann::json body;
        if (kind == "facets") {
            body = {{"field", std::string(to_string(field))}, {"k", k},
                    {"facets", to_json(facet_counts(index_, ctx.rs, field, k))}};
        } else if (kind == "temporal") {
            body = to_json(temporal_distribution(index_, ctx.rs, ref_year));
            body["reference_year"] = ref_year;
        } else if (kind == "spatial") {
            body = to_json(spatial_distribution(index_, ctx.rs, gazetteer_));
        } else {
            body = to_json(coauthor_graph(index_, ctx.rs));
        }
        body.update(echo(ctx));
        return body;
    });
}

ApiResponse SearchService::handle_terms(const Params& params) const {
    return guarded(params, [&]() -> nlohmann::json {
        const auto term = text_param(params, "term");
        if (!term) throw BadRequest("parameter 'term' is required");
        const std::string vocab = text_param(params, "vocab").value_or(std::string(kRecommenderId));
        const bool recommender = vocab == kRecommenderId && !vocabularies_.contains(vocab);
        return to_json(vocabularies_.related_terms(*term, vocab, recommender, index_));
    });
}

ApiResponse SearchService::dispatch(std::string_view path, const Params& params) const {
    constexpr std::string_view prefix = "/api/";
    if (path.substr(0, prefix.size()) == prefix) {
        const std::string_view endpoint = path.substr(prefix.size());
        if (endpoint == "search") return handle_search(params);
        if (endpoint == "terms") return handle_terms(params);
        return handle_aggregates(endpoint, params);
    }
    return guarded(params, [&]() -> nlohmann::json { throw NotFound("no such endpoint " + std::string(path)); });
}

}  // namespace facetscope
