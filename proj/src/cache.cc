#include <canonram/cache.hpp>
#include <canonram/errors.hpp>
#include <canonram/report.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace canonram
{
    namespace
    {
        auto load(const std::string & path) -> Json
        {
            std::ifstream in(path);
            if (! in)
                return Json{{"entries", Json::array()}};
            Json j;
            try {
                in >> j;
            }
            catch (const std::exception & e) {
                throw CacheCorrupt("'" + path + "' is not valid JSON: " + e.what());
            }
            if (! j.is_object() || ! j.contains("entries") || ! j["entries"].is_array())
                throw CacheCorrupt("'" + path + "' has no entries array");
            for (const auto & e : j["entries"])
                if (! e.is_object() || ! e.contains("key") || ! e.contains("value_or_bound"))
                    throw CacheCorrupt("'" + path + "' has a malformed entry");
            return j;
        }

        auto now_text() -> std::string
        {
            auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&t, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }
    }

    ResultCache::ResultCache(std::string path) :
        _path(std::move(path))
    {
    }

    auto ResultCache::resolve_path(const std::string & flag) -> std::string
    {
        if (! flag.empty())
            return flag;
        if (const char * env = std::getenv("CANONRAM_CACHE"))
            return env;
        return {};
    }

    auto ResultCache::lookup(const std::string & key, int n_max) -> std::optional<ErResult>
    {
        std::lock_guard lock(_mutex);
        if (_path.empty())
            return std::nullopt;
        Json j;
        try {
            j = load(_path);
        }
        catch (const CacheCorrupt & e) {
            _corrupt = e.what();
            return std::nullopt;
        }
        try {
            for (const auto & e : j["entries"]) {
                if (e["key"] != key)
                    continue;
                const auto & vb = e["value_or_bound"];
                ErResult r;
                r.key = key;
                r.n_max = n_max;
                if (vb.contains("exact")) {
                    int value = vb["exact"].get<int>();
                    if (value <= n_max) {
                        r.exact = true;
                        r.value = value;
                    }
                    else if (value == n_max + 1) {
                        r.exact = false;
                        r.value = value;
                    }
                    else
                        continue;
                }
                else {
                    int bound = vb["at_least"].get<int>();
                    if (bound != n_max + 1)
                        continue;
                    r.exact = false;
                    r.value = bound;
                }
                if (e.contains("witness") && ! e["witness"].is_null())
                    r.witness = coloring_from_json(e["witness"]);
                return r;
            }
        }
        catch (const std::exception & ex) {
            _corrupt = std::string("CacheCorrupt: '") + _path + "': " + ex.what();
        }
        return std::nullopt;
    }

    auto ResultCache::store(const ErResult & result, int pattern_n) -> void
    {
        std::lock_guard lock(_mutex);
        if (_path.empty())
            return;
        Json j;
        try {
            j = load(_path);
        }
        catch (const CacheCorrupt & e) {
            _corrupt = e.what();
            j = Json{{"entries", Json::array()}};
        }

        Json entry;
        entry["key"] = result.key;
        entry["n"] = pattern_n;
        entry["value_or_bound"] = result.exact ? Json{{"exact", result.value}} : Json{{"at_least", result.value}};
        entry["witness"] = result.witness ? to_json(*result.witness) : Json(nullptr);
        entry["timestamp"] = now_text();

        Json kept = Json::array();
        for (auto & e : j["entries"]) {
            if (e["key"] != result.key) {
                kept.push_back(e);
                continue;
            }
            // An exact value supersedes bounds; a larger bound supersedes a smaller one.
            const auto & vb = e["value_or_bound"];
            if (vb.contains("exact") && ! result.exact)
                return;
            if (! result.exact && vb.contains("at_least") && vb["at_least"].get<int>() > result.value)
                return;
        }
        kept.push_back(entry);
        j["entries"] = kept;

        auto tmp = _path + ".tmp";
        {
            std::ofstream out(tmp);
            if (! out)
                throw InvalidInput("cannot write cache '" + tmp + "'");
            out << j.dump(2) << "\n";
        }
        std::filesystem::rename(tmp, _path);
    }
}
