#pragma once

#include "ihall/quiver.hpp"

#include <json.hpp>

#include <chrono>
#include <optional>
#include <string>

namespace ihall {

using OrderedJson = nlohmann::ordered_json;

/// Machine-readable outcome of one CLI command. Field order is fixed so the
/// serialized form is stable; elapsed_ms is zeroed under --stable.
struct Report {
    std::string command;
    OrderedJson inputs = OrderedJson::object();
    std::string status = "verified"; // verified | failed | skipped-budget
    std::optional<std::string> residual;
    OrderedJson stats = OrderedJson::object();
    long elapsed_ms = 0;

    OrderedJson to_json() const {
        OrderedJson j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["status"] = status;
        if (residual) j["residual"] = *residual;
        else j["residual"] = nullptr;
        j["stats"] = stats;
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }

    std::string dump() const { return to_json().dump(2); }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long elapsed_ms() const {
        return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start_)
                                     .count());
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Aggregate a child status into a command status: failed dominates,
/// then skipped-budget, then verified.
inline void merge_status(std::string& acc, const std::string& s) {
    if (s == "failed" || acc == "failed") {
        acc = "failed";
    } else if (s == "skipped-budget" || acc == "skipped-budget") {
        acc = "skipped-budget";
    }
}

} // namespace ihall
