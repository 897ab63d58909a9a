#include "cognate/service.hpp"

#include <filesystem>
#include <mutex>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>
#include <unistd.h>

#include "cognate/error.hpp"
#include "cognate/pipeline.hpp"
#include "cognate/text.hpp"

namespace cognate {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ServiceResponse ok(const json& body) { return {200, body.dump()}; }

ServiceResponse failure(int status, std::string_view code, const std::string& message) {
    return {status, json{{"error", {{"code", code}, {"message", message}}}}.dump()};
}

json score(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

std::optional<std::string> param(const QueryParams& query, const std::string& key) {
    auto it = query.find(key);
    if (it == query.end() || it->second.empty()) return std::nullopt;
    return it->second;
}

std::size_t positive_param(const QueryParams& query, const std::string& key, std::size_t fallback) {
    auto text = param(query, key);
    if (!text) return fallback;
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(*text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text->size() || value == 0) throw UsageError(fmt::format("{} must be a positive integer", key));
    return static_cast<std::size_t>(value);
}

std::optional<std::string> annotator_of(const QueryParams& query, const std::optional<std::string>& header) {
    if (header && !header->empty()) return header;
    return param(query, "annotator");
}

}  // namespace

AnnotationService::AnnotationService(ProjectConfig config, std::string log_path)
    : config_(std::move(config)), log_path_(std::move(log_path)) {
    config_.validate();
    std::vector<Language> langs{config_.source};
    langs.insert(langs.end(), config_.targets.begin(), config_.targets.end());
    wordnet_ = load_wordnet_dir(config_.wordnet_dir, langs);

    NormalizeOptions normalize{config_.strip_nukta};
    for (auto task : {Task::cognate, Task::false_friend}) {
        for (auto pair : config_.language_pairs()) {
            auto path = pipeline::candidate_path(config_, task, pair);
            if (!fs::exists(path)) continue;
            auto queue = std::make_unique<Queue>(Queue{task, pair, read_candidates_file(path, normalize), {}});
            std::sort(queue->items.begin(), queue->items.end(),
                      [](const ScoredPair& a, const ScoredPair& b) { return a.pair_id < b.pair_id; });
            for (std::size_t i = 0; i < queue->items.size(); ++i) {
                const auto& id = queue->items[i].pair_id;
                queue->ids.insert(id);
                if (!by_id_.emplace(id, Location{queue.get(), i}).second) {
                    throw DataError(fmt::format("pair_id {} appears in more than one candidate file", id));
                }
            }
            queues_.push_back(std::move(queue));
        }
    }

    if (fs::exists(log_path_)) {
        std::ifstream in(log_path_, std::ios::binary);
        for (const auto& record : read_annotations(in, log_path_)) store_.upsert(record);
    }
    fs::create_directories(fs::path(log_path_).parent_path());
    const bool fresh = !fs::exists(log_path_) || fs::file_size(log_path_) == 0;
    log_ = std::fopen(log_path_.c_str(), "ab");
    if (!log_) throw DataError(fmt::format("cannot open annotation log '{}'", log_path_));
    if (fresh) {
        std::ostringstream header;
        csv::write_row(header, kAnnotationHeader);
        auto text = header.str();
        std::fwrite(text.data(), 1, text.size(), log_);
        std::fflush(log_);
    }
}

AnnotationService::~AnnotationService() {
    if (log_) std::fclose(log_);
}

std::size_t AnnotationService::candidate_count() const { return by_id_.size(); }

const AnnotationService::Queue* AnnotationService::find_queue(Task task, LanguagePair pair) const {
    for (const auto& q : queues_) {
        if (q->task == task && q->pair == pair) return q.get();
    }
    return nullptr;
}

void AnnotationService::append_log(const AnnotationRecord& record) {
    std::ostringstream line;
    write_annotation(line, record);
    auto text = line.str();
    if (std::fwrite(text.data(), 1, text.size(), log_) != text.size() || std::fflush(log_) != 0 ||
        ::fsync(::fileno(log_)) != 0) {
        throw DataError(fmt::format("cannot append to annotation log '{}'", log_path_));
    }
}

ServiceResponse AnnotationService::projects() const {
    std::shared_lock lock(mutex_);
    json tasks = json::array();
    for (auto task : {Task::cognate, Task::false_friend}) {
        json pairs = json::array();
        for (const auto& q : queues_) {
            if (q->task != task) continue;
            pairs.push_back({{"language_pair", to_string(q->pair)},
                             {"source_lang", to_string(q->pair.source)},
                             {"target_lang", to_string(q->pair.target)},
                             {"candidates", q->items.size()}});
        }
        tasks.push_back({{"task", to_string(task)}, {"pairs", pairs}});
    }
    json targets = json::array();
    for (auto t : config_.targets) targets.push_back(to_string(t));
    return ok({{"source_lang", to_string(config_.source)},
               {"target_langs", targets},
               {"tasks", tasks},
               {"annotators", store_.annotators()}});
}

ServiceResponse AnnotationService::candidates(const QueryParams& query,
                                              const std::optional<std::string>& annotator_header) const {
    Task task;
    LanguagePair pair;
    try {
        task = parse_task(param(query, "task").value_or("cognate"));
    } catch (const std::exception&) {
        return failure(404, "unknown_task", fmt::format("unknown task '{}'", query.at("task")));
    }
    try {
        pair = parse_language_pair(param(query, "pair").value_or(""));
    } catch (const std::exception&) {
        return failure(404, "unknown_pair", fmt::format("unknown language pair '{}'", param(query, "pair").value_or("")));
    }
    const auto* queue = find_queue(task, pair);
    if (!queue) return failure(404, "unknown_pair", fmt::format("no {} candidates for {}", to_string(task), to_string(pair)));

    auto status = param(query, "status").value_or("all");
    if (status != "all" && status != "pending") {
        return failure(400, "invalid_status", "status must be 'pending' or 'all'");
    }
    auto annotator = annotator_of(query, annotator_header);
    if (status == "pending" && !annotator) return failure(400, "missing_annotator", "pending filter needs an annotator");
    std::size_t page = 0;
    std::size_t page_size = 0;
    try {
        page = positive_param(query, "page", 1);
        page_size = std::min<std::size_t>(positive_param(query, "page_size", 20), 500);
    } catch (const UsageError& e) {
        return failure(400, "bad_request", e.what());
    }

    std::shared_lock lock(mutex_);
    std::vector<const ScoredPair*> selected;
    for (const auto& item : queue->items) {
        const AnnotationRecord* mine = annotator ? store_.find(item.pair_id, *annotator) : nullptr;
        if (status == "pending" && mine) continue;
        selected.push_back(&item);
    }
    json items = json::array();
    const std::size_t first = (page - 1) * page_size;
    for (std::size_t i = first; i < selected.size() && i < first + page_size; ++i) {
        const auto& c = *selected[i];
        const auto* src = wordnet_.find(c.source_word.language, c.synset_src);
        const auto* tgt = wordnet_.find(c.target_word.language, c.synset_tgt);
        const AnnotationRecord* mine = annotator ? store_.find(c.pair_id, *annotator) : nullptr;
        items.push_back({
            {"pair_id", c.pair_id},
            {"source_lang", to_string(c.source_word.language)},
            {"target_lang", to_string(c.target_word.language)},
            {"source_word", c.source_word.original},
            {"target_word", c.target_word.original},
            {"source_canonical", utf8_encode(c.source_word.canonical)},
            {"target_canonical", utf8_encode(c.target_word.canonical)},
            {"synset_src", c.synset_src.value},
            {"synset_tgt", c.synset_tgt.value},
            {"pos", src ? json(to_string(src->pos)) : json(nullptr)},
            {"gloss_src", src ? json(src->gloss) : json(nullptr)},
            {"example_src", src && src->example ? json(*src->example) : json(nullptr)},
            {"gloss_tgt", tgt ? json(tgt->gloss) : json(nullptr)},
            {"example_tgt", tgt && tgt->example ? json(*tgt->example) : json(nullptr)},
            {"ned", score(c.ned)},
            {"cosine", score(c.cosine)},
            {"jaro_winkler", score(c.jaro_winkler)},
            {"phonetic", score(c.phonetic)},
            {"label", mine ? json(to_string(mine->label)) : json(nullptr)},
        });
    }
    return ok({{"task", to_string(task)},
               {"language_pair", to_string(pair)},
               {"annotator", annotator ? json(*annotator) : json(nullptr)},
               {"status", status},
               {"page", page},
               {"page_size", page_size},
               {"total", selected.size()},
               {"items", items}});
}

namespace {

json progress_row(const std::vector<ScoredPair>& items, const AnnotationStore& store, const std::string& annotator) {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t skip = 0;
    for (const auto& item : items) {
        const auto* r = store.find(item.pair_id, annotator);
        if (!r) continue;
        (r->label == Label::positive ? positive : r->label == Label::negative ? negative : skip)++;
    }
    return {{"annotator", annotator},
            {"labeled", positive + negative + skip},
            {"positive", positive},
            {"negative", negative},
            {"skip", skip},
            {"total", items.size()}};
}

}  // namespace

ServiceResponse AnnotationService::post_annotation(const std::string& body,
                                                   const std::optional<std::string>& annotator_header) {
    json payload;
    try {
        payload = json::parse(body);
    } catch (const json::parse_error&) {
        return failure(400, "bad_request", "body is not valid JSON");
    }
    if (!payload.is_object()) return failure(400, "bad_request", "body must be a JSON object");
    auto text_field = [&](const char* key) -> std::optional<std::string> {
        auto it = payload.find(key);
        if (it == payload.end() || !it->is_string()) return std::nullopt;
        return it->get<std::string>();
    };
    auto pair_id = text_field("pair_id");
    auto annotator = text_field("annotator");
    if (!annotator || annotator->empty()) annotator = annotator_header;
    auto label_text = text_field("label");
    if (!pair_id) return failure(400, "bad_request", "pair_id is required");
    if (!annotator || annotator->empty()) return failure(400, "missing_annotator", "annotator is required");
    if (annotator->find_first_of(",\"\r\n") != std::string::npos) {
        return failure(400, "bad_request", "annotator name may not contain commas, quotes or newlines");
    }
    auto label = label_text ? try_parse_label(*label_text) : std::nullopt;
    if (!label) {
        return failure(400, "invalid_label", fmt::format("label must be positive, negative or skip, got '{}'",
                                                         label_text.value_or("")));
    }
    auto where = by_id_.find(*pair_id);
    if (where == by_id_.end()) return failure(404, "unknown_pair", fmt::format("unknown pair_id '{}'", *pair_id));

    std::unique_lock lock(mutex_);
    AnnotationRecord record{*pair_id, *annotator, *label, utc_timestamp_now()};
    if (store_.upsert(record)) append_log(record);
    const auto* stored = store_.find(*pair_id, *annotator);
    const auto* queue = where->second.queue;
    return ok({{"annotation",
                {{"pair_id", stored->pair_id},
                 {"annotator", stored->annotator},
                 {"label", to_string(stored->label)},
                 {"timestamp", stored->timestamp}}},
               {"task", to_string(queue->task)},
               {"language_pair", to_string(queue->pair)},
               {"progress", progress_row(queue->items, store_, *annotator)}});
}

ServiceResponse AnnotationService::agreement(const QueryParams& query) const {
    Task task;
    try {
        task = parse_task(param(query, "task").value_or("cognate"));
    } catch (const std::exception&) {
        return failure(404, "unknown_task", "unknown task");
    }
    std::vector<const Queue*> selected;
    if (auto pair_text = param(query, "pair")) {
        auto pair = try_parse_language_pair(*pair_text);
        const Queue* q = pair ? find_queue(task, *pair) : nullptr;
        if (!q) return failure(404, "unknown_pair", fmt::format("unknown language pair '{}'", *pair_text));
        selected.push_back(q);
    } else {
        for (const auto& q : queues_) {
            if (q->task == task) selected.push_back(q.get());
        }
    }

    std::shared_lock lock(mutex_);
    json rows = json::array();
    for (const auto* q : selected) {
        std::vector<std::pair<std::string, LabelMap>> labelled;
        for (const auto& name : store_.annotators()) {
            LabelMap mine;
            for (const auto& [id, label] : store_.labels(name)) {
                if (q->ids.contains(id)) mine.emplace(id, label);
            }
            if (!mine.empty()) labelled.emplace_back(name, std::move(mine));
        }
        auto a_name = param(query, "annotator_a");
        auto b_name = param(query, "annotator_b");
        const LabelMap* a = nullptr;
        const LabelMap* b = nullptr;
        static const LabelMap kNone;
        if (a_name && b_name) {
            a = &kNone;
            b = &kNone;
            for (const auto& [name, labels] : labelled) {
                if (name == *a_name) a = &labels;
                if (name == *b_name) b = &labels;
            }
        } else if (labelled.size() == 2) {
            a_name = labelled[0].first;
            b_name = labelled[1].first;
            a = &labelled[0].second;
            b = &labelled[1].second;
        } else if (labelled.size() > 2) {
            return failure(400, "ambiguous_annotators",
                           fmt::format("{} annotators labelled {}; pass annotator_a and annotator_b",
                                       labelled.size(), to_string(q->pair)));
        }
        if (!a || !b) {
            if (selected.size() > 1) continue;
            return failure(409, "insufficient_overlap",
                           fmt::format("{} needs labels from two annotators", to_string(q->pair)));
        }
        try {
            auto merged = merge_dual(*a, *b, q->pair, &q->ids);
            rows.push_back({{"language_pair", to_string(q->pair)},
                            {"annotator_a", *a_name},
                            {"annotator_b", *b_name},
                            {"candidates", q->items.size()},
                            {"n_items", merged.report.n_items},
                            {"percent_agreement", merged.report.percent_agreement},
                            {"kappa", merged.report.kappa},
                            {"retained", merged.report.retained}});
        } catch (const DataError& e) {
            if (selected.size() > 1) continue;
            return failure(409, "insufficient_overlap", e.what());
        }
    }
    return ok({{"task", to_string(task)}, {"rows", rows}});
}

ServiceResponse AnnotationService::progress(const QueryParams& query) const {
    Task task;
    try {
        task = parse_task(param(query, "task").value_or("cognate"));
    } catch (const std::exception&) {
        return failure(404, "unknown_task", "unknown task");
    }
    auto pair_text = param(query, "pair");
    std::optional<LanguagePair> only;
    if (pair_text) {
        only = try_parse_language_pair(*pair_text);
        if (!only || !find_queue(task, *only)) {
            return failure(404, "unknown_pair", fmt::format("unknown language pair '{}'", *pair_text));
        }
    }
    std::shared_lock lock(mutex_);
    json pairs = json::array();
    for (const auto& q : queues_) {
        if (q->task != task || (only && q->pair != *only)) continue;
        json annotators = json::array();
        for (const auto& name : store_.annotators()) {
            auto row = progress_row(q->items, store_, name);
            if (row["labeled"].get<std::size_t>() > 0) annotators.push_back(row);
        }
        pairs.push_back({{"language_pair", to_string(q->pair)}, {"total", q->items.size()}, {"annotators", annotators}});
    }
    return ok({{"task", to_string(task)}, {"pairs", pairs}});
}

struct HttpFrontEnd::Impl {
    httplib::Server server;
};

HttpFrontEnd::HttpFrontEnd(AnnotationService& service, const std::string& static_dir)
    : impl_(std::make_unique<Impl>()) {
    auto& s = impl_->server;
    auto query_of = [](const httplib::Request& req) {
        QueryParams q;
        for (const auto& [k, v] : req.params) q.emplace(k, v);
        return q;
    };
    auto header_of = [](const httplib::Request& req) -> std::optional<std::string> {
        if (!req.has_header("X-Annotator")) return std::nullopt;
        return req.get_header_value("X-Annotator");
    };
    auto reply = [](httplib::Response& res, const ServiceResponse& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json; charset=utf-8");
    };
    s.Get("/api/projects", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.projects());
    });
    s.Get("/api/candidates", [&service, reply, query_of, header_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.candidates(query_of(req), header_of(req)));
    });
    s.Post("/api/annotations", [&service, reply, header_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.post_annotation(req.body, header_of(req)));
    });
    s.Get("/api/agreement", [&service, reply, query_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.agreement(query_of(req)));
    });
    s.Get("/api/progress", [&service, reply, query_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.progress(query_of(req)));
    });
    s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(json{{"error", {{"code", "internal"}, {"message", message}}}}.dump(),
                        "application/json; charset=utf-8");
    });
    if (!static_dir.empty() && !s.set_mount_point("/", static_dir)) {
        throw DataError(fmt::format("static directory '{}' does not exist", static_dir));
    }
}

HttpFrontEnd::~HttpFrontEnd() = default;

int HttpFrontEnd::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpFrontEnd::listen() { impl_->server.listen_after_bind(); }
void HttpFrontEnd::stop() { impl_->server.stop(); }
void HttpFrontEnd::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace cognate
