#include "cli/plan_file.hpp"

#include <fstream>
#include <sstream>

#include "cli/errors.hpp"

namespace rvea::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

} // namespace

std::string canonical_key(const std::string& key) {
    static const std::map<std::string, std::string> aliases{
        {"n", "n"},           {"r", "r"},         {"algo", "algo"},        {"algorithm", "algo"},
        {"algorithms", "algo"}, {"op", "op"},     {"operator", "op"},      {"operators", "op"},
        {"metric", "metric"}, {"target", "target"}, {"start", "start"},   {"reps", "reps"},
        {"replicates", "reps"}, {"seed", "seed"}, {"cap", "cap"},          {"threads", "threads"},
        {"potential", "potential"}, {"w", "w"},   {"levels", "levels"},    {"samples", "samples"},
        {"mode", "mode"},     {"dist", "dist"},   {"distribution", "dist"}, {"input", "input"},
        {"model", "model"},
    };
    const auto it = aliases.find(key);
    return it == aliases.end() ? std::string{} : it->second;
}

Settings parse_plan(std::istream& in) {
    Settings out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("plan line " + std::to_string(number) + ": expected 'key = value'");
        }
        const std::string raw_key = trim(line.substr(0, eq));
        const std::string key = canonical_key(raw_key);
        if (key.empty()) throw UsageError("plan line " + std::to_string(number) + ": unknown key '" + raw_key + "'");
        if (out.contains(key)) throw UsageError("plan line " + std::to_string(number) + ": duplicate key '" + raw_key + "'");
        std::string value = trim(line.substr(eq + 1));
        std::vector<std::string> items;
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') throw UsageError("plan line " + std::to_string(number) + ": unterminated list");
            std::stringstream body(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(body, item, ',')) {
                item = unquote(trim(item));
                if (item.empty()) throw UsageError("plan line " + std::to_string(number) + ": empty list element");
                items.push_back(item);
            }
        } else {
            value = unquote(value);
            if (value.empty()) throw UsageError("plan line " + std::to_string(number) + ": missing value");
            items.push_back(value);
        }
        if (items.empty()) throw UsageError("plan line " + std::to_string(number) + ": empty list");
        out.emplace(key, std::move(items));
    }
    return out;
}

Settings load_plan(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open plan file '" + path + "'");
    return parse_plan(file);
}

} // namespace rvea::cli
