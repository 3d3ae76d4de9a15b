#include "errata.hpp"

#include "triginv/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#ifndef TRIGINV_DATA_DIR
#define TRIGINV_DATA_DIR "data"
#endif

namespace triginv::cli {

std::filesystem::path Errata::default_file()
{
    if (const char* env = std::getenv("TRIGINV_DATA"); env && *env)
        return std::filesystem::path(env) / "errata.json";
    return std::filesystem::path(TRIGINV_DATA_DIR) / "errata.json";
}

Errata Errata::load(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw ConfigurationError("cannot read errata fixture " + file.string());
    Errata out;
    try {
        const auto j = nlohmann::json::parse(in);
        out.version_ = j.at("version").get<int>();
        for (const auto& e : j.at("entries")) {
            ErrataEntry entry;
            entry.id = e.at("id").get<std::string>();
            entry.model = e.at("model").get<std::string>();
            entry.kind = e.at("kind").get<std::string>();
            entry.verdict = e.value("verdict", "");
            if (e.contains("entries"))
                entry.entries = e.at("entries").get<std::vector<std::string>>();
            out.entries_.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigurationError("malformed errata fixture " + file.string() + ": " + ex.what());
    }
    return out;
}

std::optional<ErrataEntry> Errata::find(const std::string& model, const std::string& kind,
                                        const std::string& label) const
{
    for (const auto& e : entries_) {
        if (e.model != model || e.kind != kind)
            continue;
        if (label.empty() || std::find(e.entries.begin(), e.entries.end(), label) != e.entries.end())
            return e;
    }
    return std::nullopt;
}

} // namespace triginv::cli
