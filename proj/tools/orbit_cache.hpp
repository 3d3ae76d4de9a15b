#ifndef TRIGINV_TOOLS_ORBIT_CACHE_HPP
#define TRIGINV_TOOLS_ORBIT_CACHE_HPP

#include "triginv/rootdata.hpp"

#include <filesystem>
#include <string>

namespace triginv::cli {

/// --cache-dir, then TRIGINV_CACHE, then $XDG_CACHE_HOME/triginv or ~/.cache/triginv.
std::filesystem::path resolve_cache_dir(const std::string& flag);

/// Fundamental orbits on disk, one JSON file per (model, seed index).
/// Readers and writers take an advisory flock on <dir>/.lock.
class OrbitCache {
public:
    explicit OrbitCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// Orbit of seed `a` (0-based): loaded from disk when a valid file exists,
    /// otherwise computed and written. Either way installed into the chart.
    const std::vector<Weight>& fundamental_orbit(const ModelChart& chart, std::size_t a, bool* hit = nullptr);
    /// Loads or computes every seed of the chart.
    void warm(const ModelChart& chart);

    std::filesystem::path file_for(const ModelChart& chart, std::size_t a) const;

private:
    std::filesystem::path dir_;
};

} // namespace triginv::cli

#endif
