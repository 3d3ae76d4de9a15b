#ifndef TRIGINV_TOOLS_ERRATA_HPP
#define TRIGINV_TOOLS_ERRATA_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace triginv::cli {

struct ErrataEntry {
    std::string id;
    std::string model;
    std::string kind;                  // fti, operator, eta_tau, decomposition
    std::vector<std::string> entries;  // e.g. "B1", "eta2", "L3"
    std::string verdict;
};

class Errata {
public:
    static Errata load(const std::filesystem::path& file);
    /// Compile-time data directory, overridable with TRIGINV_DATA.
    static std::filesystem::path default_file();

    int version() const { return version_; }
    const std::vector<ErrataEntry>& entries() const { return entries_; }
    /// Entry listing `label` for (model, kind); an empty label matches any entry of that kind.
    std::optional<ErrataEntry> find(const std::string& model, const std::string& kind,
                                    const std::string& label = "") const;

private:
    int version_ = 0;
    std::vector<ErrataEntry> entries_;
};

} // namespace triginv::cli

#endif
