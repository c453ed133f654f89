#pragma once

// Helpers for exercising the rbt binary as a subprocess and validating its
// JSON outputs against the shipped schemas.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace cli_harness {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

inline std::string binary_path() {
    const char* env = std::getenv("RBT_BIN");
    if (env && *env) return env;
    return "./rbt";
}

inline std::string source_dir() {
    const char* env = std::getenv("RBT_SOURCE_DIR");
    if (env && *env) return env;
    return ".";
}

/// Runs `rbt <args>` capturing stdout; stderr passes through.
inline RunResult run(const std::string& args) {
    const std::string command = binary_path() + " " + args;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed: " + command);
    RunResult result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.stdout_text.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

/// Text outputs are deterministic except for lines carrying wall-clock
/// values, which are prefixed "# time" by contract.
inline std::string strip_timing(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# time", 0) != 0) out << line << '\n';
    return out.str();
}

/// JSON outputs segregate wall-clock fields under a "timing" key.
inline std::string strip_timing_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("timing");
    return j.dump();
}

inline nlohmann::json load_schema(const std::string& name) {
    const std::filesystem::path path =
        std::filesystem::path(source_dir()) / "schemas" / (name + ".schema.json");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing schema: " + path.string());
    return nlohmann::json::parse(in);
}

// Minimal JSON-schema checker covering the subset the shipped schemas use:
// type, enum, required, properties, items.
inline bool validates(const nlohmann::json& value, const nlohmann::json& schema,
                      std::string* why = nullptr) {
    const auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (schema.contains("enum")) {
        for (const auto& candidate : schema.at("enum"))
            if (value == candidate) return true;
        return fail("value not in enum: " + value.dump());
    }
    if (schema.contains("type")) {
        const std::string type = schema.at("type").get<std::string>();
        if (type == "object" && !value.is_object()) return fail("expected object");
        if (type == "array" && !value.is_array()) return fail("expected array");
        if (type == "string" && !value.is_string()) return fail("expected string");
        if (type == "integer" && !value.is_number_integer())
            return fail("expected integer: " + value.dump());
        if (type == "number" && !value.is_number()) return fail("expected number");
        if (type == "boolean" && !value.is_boolean()) return fail("expected boolean");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    return fail("missing required key: " + key.get<std::string>());
        if (schema.contains("properties"))
            for (const auto& [key, subschema] : schema.at("properties").items())
                if (value.contains(key) && !validates(value.at(key), subschema, why))
                    return fail("at key '" + key + "': " + (why ? *why : ""));
    }
    if (value.is_array() && schema.contains("items"))
        for (const auto& item : value)
            if (!validates(item, schema.at("items"), why))
                return fail("in array item: " + (why ? *why : ""));
    return true;
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("rbt-test-" + std::to_string(std::rand()) + "-" +
                 std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace cli_harness
