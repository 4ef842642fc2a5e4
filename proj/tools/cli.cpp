#include "cli.hpp"

#include <facetscope/index.hpp>
#include <facetscope/service.hpp>

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <ostream>

namespace facetscope::cli {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

HttpServer* g_server = nullptr;

extern "C" void handle_signal(int) {
    if (g_server) g_server->stop();
}

struct IndexArgs {
    std::string corpus;
    std::string out;
    bool strict = false;
    std::vector<std::string> junk;
};

struct ServeArgs {
    std::string config;
    std::string index;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string gazetteer;
    std::vector<std::string> vocabs;
    std::string static_dir;
    std::optional<int> ref_year;
    std::size_t page_size = 10;
    std::string cors = "*";
};

struct QueryArgs {
    std::string index;
    std::string query;
    std::string aggregate = "search";
    std::string type, database, person, subject;
    std::optional<int> from, to, ref_year;
    std::optional<long long> page, size, k;
    std::string field;
    std::string gazetteer;
    std::vector<std::string> vocabs;
    std::string term;
    std::string vocab;
    bool pretty = false;
};

void add_vocab_specs(ServiceConfig& config, const std::vector<std::string>& specs) {
    for (const auto& entry : specs) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
            throw CLI::ValidationError("--vocab", "expected ID=PATH, got '" + entry + "'");
        }
        config.vocabularies[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
}

int run_index(const IndexArgs& args, std::ostream& out, std::ostream& err) {
    CorpusReadOptions options;
    options.strict = args.strict;
    if (!args.junk.empty()) options.normalizer = ValueNormalizer(args.junk);
    CorpusReadResult corpus = read_corpus(args.corpus, options);
    for (const auto& e : corpus.errors) err << "warning: " << args.corpus << ": " << e.what() << '\n';
    const Index index = Index::build(std::move(corpus.records));
    save_index(index, args.out);
    out << "indexed " << index.doc_count() << " records into " << args.out;
    if (!corpus.errors.empty()) out << " (" << corpus.errors.size() << " lines skipped)";
    out << '\n';
    return 0;
}

int run_serve(const ServeArgs& args, std::ostream& out) {
    ServiceConfig config;
    if (!args.config.empty()) {
        config = ServiceConfig::load(args.config);
    } else {
        config.index_dir = args.index;
        config.host = args.host;
        config.port = args.port;
        if (!args.gazetteer.empty()) config.gazetteer = args.gazetteer;
        if (!args.static_dir.empty()) config.static_dir = args.static_dir;
        config.reference_year = args.ref_year;
        config.page_size = args.page_size;
        config.cors_origin = args.cors;
        add_vocab_specs(config, args.vocabs);
    }
    const SearchService service = SearchService::from_config(config);
    HttpServer server(service, config);
    const int port = server.bind();
    out << "serving " << service.index().doc_count() << " records on http://" << config.host << ':' << port << '\n'
        << std::flush;
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    server.listen();
    g_server = nullptr;
    return 0;
}

int run_query(const QueryArgs& args, std::ostream& out, std::ostream& err) {
    ServiceConfig config;
    config.index_dir = args.index;
    if (!args.gazetteer.empty()) config.gazetteer = args.gazetteer;
    add_vocab_specs(config, args.vocabs);
    config.reference_year = args.ref_year;
    const SearchService service = SearchService::from_config(config);

    Params params;
    params["q"] = args.query;
    auto put = [&](const char* name, const std::string& value) {
        if (!value.empty()) params[name] = value;
    };
    auto put_num = [&](const char* name, const auto& value) {
        if (value) params[name] = std::to_string(*value);
    };
    put("type", args.type);
    put("database", args.database);
    put("person", args.person);
    put("subject", args.subject);
    put("field", args.field);
    put("term", args.term);
    put("vocab", args.vocab);
    put_num("from", args.from);
    put_num("to", args.to);
    put_num("page", args.page);
    put_num("size", args.size);
    put_num("k", args.k);
    put_num("ref_year", args.ref_year);

    const ApiResponse response = service.dispatch("/api/" + args.aggregate, params);
    if (response.status != 200) {
        err << "error (" << response.status << "): " << response.body.value("error", std::string("request failed"));
        if (response.body.contains("offset")) err << " at offset " << response.body["offset"];
        err << '\n';
        return kExitFailure;
    }
    out << (args.pretty ? response.body.dump(2) : response.text()) << '\n';
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"facetscope: faceted search over bibliographic metadata"};
    app.require_subcommand(1);

    IndexArgs index_args;
    auto* index_cmd = app.add_subcommand("index", "Build an index directory from a corpus file");
    index_cmd->add_option("--corpus", index_args.corpus, "Line-delimited JSON corpus (.gz accepted)")->required();
    index_cmd->add_option("--out", index_args.out, "Index output directory")->required();
    index_cmd->add_flag("--strict", index_args.strict, "Fail on the first malformed line");
    index_cmd->add_option("--junk", index_args.junk, "Replace the junk value list");

    ServeArgs serve_args;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    auto* config_opt = serve_cmd->add_option("--config", serve_args.config, "JSON service config");
    auto* index_opt = serve_cmd->add_option("--index", serve_args.index, "Index directory");
    config_opt->excludes(index_opt);
    serve_cmd->add_option("--host", serve_args.host, "Listen address");
    serve_cmd->add_option("--port", serve_args.port, "Listen port (0 picks a free port)")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--gazetteer", serve_args.gazetteer, "Gazetteer TSV file");
    serve_cmd->add_option("--vocab", serve_args.vocabs, "Vocabulary as ID=PATH (repeatable)");
    serve_cmd->add_option("--static", serve_args.static_dir, "Static UI asset directory");
    serve_cmd->add_option("--ref-year", serve_args.ref_year, "Reference year for temporal charts");
    serve_cmd->add_option("--page-size", serve_args.page_size, "Default page size")->check(CLI::Range(1, 100));
    serve_cmd->add_option("--cors-origin", serve_args.cors, "Access-Control-Allow-Origin value");

    QueryArgs query_args;
    auto* query_cmd = app.add_subcommand("query", "Run one request offline and print its JSON payload");
    query_cmd->add_option("--index", query_args.index, "Index directory")->required();
    query_cmd->add_option("query", query_args.query, "Query string (empty matches everything)");
    query_cmd->add_option("--aggregate", query_args.aggregate, "search|facets|temporal|spatial|coauthors|linking|terms")
        ->check(CLI::IsMember({"search", "facets", "temporal", "spatial", "coauthors", "linking", "terms"}));
    query_cmd->add_option("--type", query_args.type, "Filter: information type");
    query_cmd->add_option("--database", query_args.database, "Filter: database");
    query_cmd->add_option("--person", query_args.person, "Filter: person");
    query_cmd->add_option("--subject", query_args.subject, "Filter: subject");
    query_cmd->add_option("--from", query_args.from, "Filter: first year");
    query_cmd->add_option("--to", query_args.to, "Filter: last year");
    query_cmd->add_option("--page", query_args.page, "Result page (search)");
    query_cmd->add_option("--size", query_args.size, "Page size (search)");
    query_cmd->add_option("--field", query_args.field, "Facet field (facets)");
    query_cmd->add_option("--k", query_args.k, "Facet count limit (facets)");
    query_cmd->add_option("--ref-year", query_args.ref_year, "Reference year (temporal)");
    query_cmd->add_option("--gazetteer", query_args.gazetteer, "Gazetteer TSV file (spatial)");
    query_cmd->add_option("--vocab", query_args.vocabs, "Vocabulary as ID=PATH (terms)");
    query_cmd->add_option("--term", query_args.term, "Term (terms)");
    query_cmd->add_option("--vocab-id", query_args.vocab, "Vocabulary id or 'recommender' (terms)");
    query_cmd->add_flag("--pretty", query_args.pretty, "Indent JSON output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (index_cmd->parsed()) return run_index(index_args, out, err);
        if (serve_cmd->parsed()) {
            if (serve_args.config.empty() && serve_args.index.empty()) {
                err << "error: serve needs --config or --index\n\n" << serve_cmd->help();
                return kExitUsage;
            }
            return run_serve(serve_args, out);
        }
        return run_query(query_args, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace facetscope::cli
