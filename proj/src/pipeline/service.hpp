#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "annotation/task.hpp"
#include "pipeline/config.hpp"
#include "pipeline/engine.hpp"

namespace httplib {
class Server;
}

namespace rumortrack::pipeline {

struct Response {
    int status = 200;
    std::string body;  // JSON
};

// Request handling is independent of the HTTP transport so it can be driven
// directly from tests and the C API. Thread-safe.
class Service {
public:
    // Ingests the configured corpus and reloads persisted tasks from
    // <data_dir>/tasks. Throws on bad configuration.
    Service(Config config, std::filesystem::path data_dir);
    ~Service();

    Response handle(const std::string& method, const std::string& path,
                    const std::map<std::string, std::string>& params, const std::string& body);

    // Blocks until stop(). Throws Error(Io) when the port cannot be bound.
    void listen(const std::string& host, int port);
    void stop();
    int bound_port() const { return bound_port_.load(); }

    const Config& config() const { return config_; }

private:
    struct TaskEntry {
        std::string rumor_id;
        std::unique_ptr<annotation::SharedTask> task;
    };

    Response evaluate(const std::string& body);
    Response rumors();
    Response timeline(const std::string& rumor_id);
    Response create_task(const std::string& body);
    Response next(const std::string& task_id, const std::map<std::string, std::string>& params);
    Response submit(const std::string& task_id, const std::string& body);
    Response task_stats(const std::string& task_id);
    Response report(const std::string& run_id);

    TaskEntry& task(const std::string& task_id);
    void persist(const std::string& task_id, const annotation::AnnotationTask& t);

    Config config_;
    std::filesystem::path data_dir_;
    CorpusState state_;
    std::map<std::string, std::string> texts_;
    std::mutex tasks_mutex_;
    std::map<std::string, TaskEntry> tasks_;
    std::atomic<int> bound_port_{0};
    std::unique_ptr<httplib::Server> server_;
    std::mutex server_mutex_;
    bool stopped_ = false;
};

}  // namespace rumortrack::pipeline
