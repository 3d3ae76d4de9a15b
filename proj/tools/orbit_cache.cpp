#include "orbit_cache.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace triginv::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve_cache_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("TRIGINV_CACHE"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "triginv";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "triginv";
    return fs::temp_directory_path() / "triginv-cache";
}

namespace {

class DirLock {
public:
    DirLock(const fs::path& dir, bool exclusive)
    {
        fd_ = ::open((dir / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0)
            ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    }
    ~DirLock()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    int fd_ = -1;
};

// A cached orbit is accepted only if it has the expected size, is in
// canonical order and every element lies over the seed.
bool plausible(const ModelChart& chart, std::size_t a, const std::vector<Weight>& orbit)
{
    const Weight seed = chart.fundamental_weight(a);
    if (static_cast<std::int64_t>(orbit.size()) != chart.orbit_size_dominant(seed))
        return false;
    for (std::size_t i = 1; i < orbit.size(); ++i)
        if (!chart.ambient_less(orbit[i - 1], orbit[i]))
            return false;
    for (const auto& w : orbit)
        if (dominant_representative(chart, w) != seed)
            return false;
    return true;
}

std::optional<std::vector<Weight>> load(const fs::path& file, const ModelChart& chart, std::size_t a)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    try {
        const json j = json::parse(in);
        if (j.at("model").get<std::string>() != chart.name() || j.at("seed").get<std::size_t>() != a + 1)
            return std::nullopt;
        std::vector<Weight> orbit;
        for (const auto& labels : j.at("labels")) {
            if (static_cast<int>(labels.size()) != chart.rank())
                return std::nullopt;
            Weight w;
            for (int i = 0; i < chart.rank(); ++i)
                w[i] = labels[i].get<std::int32_t>();
            orbit.push_back(w);
        }
        if (!plausible(chart, a, orbit))
            return std::nullopt;
        return orbit;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store(const fs::path& file, const ModelChart& chart, std::size_t a, const std::vector<Weight>& orbit)
{
    json labels = json::array();
    for (const auto& w : orbit) {
        json l = json::array();
        for (int i = 0; i < chart.rank(); ++i)
            l.push_back(w[i]);
        labels.push_back(l);
    }
    const json j = {{"model", chart.name()}, {"seed", a + 1}, {"size", orbit.size()}, {"labels", labels}};
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump() << "\n";
        if (!out)
            return;
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
}

} // namespace

fs::path OrbitCache::file_for(const ModelChart& chart, std::size_t a) const
{
    return dir_ / "orbits" / (chart.name() + "_" + std::to_string(a + 1) + ".json");
}

const std::vector<Weight>& OrbitCache::fundamental_orbit(const ModelChart& chart, std::size_t a, bool* hit)
{
    std::error_code ec;
    fs::create_directories(dir_ / "orbits", ec);
    const fs::path file = file_for(chart, a);
    if (!ec) {
        std::optional<std::vector<Weight>> cached;
        {
            DirLock lock(dir_, false);
            cached = load(file, chart, a);
        }
        if (cached) {
            if (hit)
                *hit = true;
            chart.install_fundamental_orbit(a, std::move(*cached));
            return chart.fundamental_orbit(a);
        }
    }
    if (hit)
        *hit = false;
    const auto& orbit = chart.fundamental_orbit(a);
    if (!ec) {
        DirLock lock(dir_, true);
        store(file, chart, a, orbit);
    }
    return orbit;
}

void OrbitCache::warm(const ModelChart& chart)
{
    for (int a = 0; a < chart.rank(); ++a)
        fundamental_orbit(chart, static_cast<std::size_t>(a));
}

} // namespace triginv::cli
