#pragma once

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cognate/annotation.hpp"
#include "cognate/classify.hpp"
#include "cognate/config.hpp"

namespace cognate {

using QueryParams = std::map<std::string, std::string>;

struct ServiceResponse {
    int status = 200;
    std::string body;  // JSON
};

// State behind the annotation HTTP API. Handlers take already-decoded request
// parts so they can be exercised without a socket. Reads share a lock; every
// write is appended to the log and flushed before the handler returns.
class AnnotationService {
public:
    // Loads the project's candidate files (whichever exist), the wordnets for
    // glosses, and replays the annotation log at `log_path`.
    AnnotationService(ProjectConfig config, std::string log_path);
    ~AnnotationService();
    AnnotationService(const AnnotationService&) = delete;
    AnnotationService& operator=(const AnnotationService&) = delete;

    ServiceResponse projects() const;
    ServiceResponse candidates(const QueryParams& query, const std::optional<std::string>& annotator_header) const;
    ServiceResponse post_annotation(const std::string& body, const std::optional<std::string>& annotator_header);
    ServiceResponse agreement(const QueryParams& query) const;
    ServiceResponse progress(const QueryParams& query) const;

    std::size_t candidate_count() const;
    const std::string& log_path() const { return log_path_; }
    const ProjectConfig& config() const { return config_; }

private:
    struct Queue {
        Task task;
        LanguagePair pair;
        std::vector<ScoredPair> items;  // ordered by pair_id
        std::set<std::string> ids;
    };
    struct Location {
        const Queue* queue;
        std::size_t index;
    };

    const Queue* find_queue(Task task, LanguagePair pair) const;
    void append_log(const AnnotationRecord& record);

    ProjectConfig config_;
    std::string log_path_;
    LinkedWordnet wordnet_;
    std::vector<std::unique_ptr<Queue>> queues_;
    std::map<std::string, Location> by_id_;

    mutable std::shared_mutex mutex_;
    AnnotationStore store_;
    std::FILE* log_ = nullptr;
};

// Blocking HTTP front end: the JSON API under /api and static files from
// `static_dir` (when set) at /.
class HttpFrontEnd {
public:
    HttpFrontEnd(AnnotationService& service, const std::string& static_dir);
    ~HttpFrontEnd();

    // port 0 picks a free port; returns the bound port, or -1 on failure.
    int bind(const std::string& host, int port);
    void listen();  // blocks until stop()
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cognate
