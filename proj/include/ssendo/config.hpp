#pragma once

// Process-wide settings: cache and data directories.

#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace ssendo {

namespace fs = std::filesystem;

namespace detail {

struct PathSettings {
    std::mutex mu;
    std::optional<fs::path> cache_dir;
    std::optional<fs::path> data_dir;
};

inline PathSettings& path_settings()
{
    static PathSettings s;
    return s;
}

} // namespace detail

inline fs::path default_cache_dir()
{
    if (const char* env = std::getenv("SSENDO_CACHE"); env && *env)
        return fs::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "ssendo";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "ssendo";
    return fs::temp_directory_path() / "ssendo";
}

// Empty path disables the on-disk cache.
inline void set_cache_dir(const fs::path& dir)
{
    auto& s = detail::path_settings();
    std::lock_guard lk(s.mu);
    s.cache_dir = dir;
}

inline fs::path cache_dir()
{
    auto& s = detail::path_settings();
    std::lock_guard lk(s.mu);
    if (!s.cache_dir)
        s.cache_dir = default_cache_dir();
    return *s.cache_dir;
}

inline fs::path default_data_dir()
{
    if (const char* env = std::getenv("SSENDO_DATA"); env && *env)
        return fs::path(env);
#ifdef SSENDO_DATA_DIR
    return fs::path(SSENDO_DATA_DIR);
#else
    return fs::path("data");
#endif
}

inline void set_data_dir(const fs::path& dir)
{
    auto& s = detail::path_settings();
    std::lock_guard lk(s.mu);
    s.data_dir = dir;
}

inline fs::path data_dir()
{
    auto& s = detail::path_settings();
    std::lock_guard lk(s.mu);
    if (!s.data_dir)
        s.data_dir = default_data_dir();
    return *s.data_dir;
}

} // namespace ssendo
