#pragma once

// On-disk cache of mirror bundles. Each entry is a directory holding one
// canonical JSON file per series and a manifest with their SHA-256 hashes.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <openssl/evp.h>

#include <mirrorint/json_io.hpp>
#include <mirrorint/mirror.hpp>

namespace mirrorint::cli {

namespace fs = std::filesystem;

class CacheCorrupt : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

inline std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path& p, const std::string& data)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << data;
    if (!out) {
        throw std::runtime_error("cannot write " + p.string());
    }
}

inline std::string index_tag(const IndexVec& L)
{
    std::string s;
    for (auto v : L) {
        s += "_" + std::to_string(v);
    }
    return s;
}

/// Flattens a bundle into named series ("F", "G1", "GL_3_3", "q1", "qL_3_3", "z1").
inline std::map<std::string, MSeries> bundle_series(const MirrorBundle& b)
{
    std::map<std::string, MSeries> out;
    out.emplace("F", b.F);
    for (std::size_t k = 0; k < b.G.size(); ++k) {
        out.emplace("G" + std::to_string(k + 1), b.G[k]);
        out.emplace("q" + std::to_string(k + 1), b.q[k]);
    }
    for (std::size_t k = 0; k < b.zofq.size(); ++k) {
        out.emplace("z" + std::to_string(k + 1), b.zofq[k]);
    }
    for (const auto& [L, s] : b.GL) {
        out.emplace("GL" + index_tag(L), s);
    }
    for (const auto& [L, s] : b.qL) {
        out.emplace("qL" + index_tag(L), s);
    }
    return out;
}

inline MirrorBundle bundle_from_series(const FormSystem& sys, std::int64_t order,
                                       const std::map<std::string, MSeries>& m)
{
    auto get = [&](const std::string& name) -> const MSeries& {
        auto it = m.find(name);
        if (it == m.end()) {
            throw CacheCorrupt("cache entry lacks series " + name);
        }
        return it->second;
    };
    MirrorBundle b{sys, order, sys.balanced(), get("F"), {}, {}, {}, {}, {}};
    for (std::size_t k = 1; k <= sys.dim(); ++k) {
        b.G.push_back(get("G" + std::to_string(k)));
        b.q.push_back(get("q" + std::to_string(k)));
        b.zofq.push_back(get("z" + std::to_string(k)));
    }
    for (const auto& L : enumerate_E(sys)) {
        b.GL.emplace(L, get("GL" + index_tag(L)));
        b.qL.emplace(L, get("qL" + index_tag(L)));
    }
    return b;
}

class SeriesCache
{
public:
    explicit SeriesCache(fs::path root) : root_(std::move(root)) {}

    static std::string key(const FormSystem& sys, std::int64_t order)
    {
        const nlohmann::json k{{"system", json::system_json(sys)}, {"order", order}, {"format", 1}};
        return sha256_hex(k.dump()).substr(0, 32);
    }

    fs::path entry(const std::string& key) const { return root_ / key; }

    /// nullopt on a miss; throws CacheCorrupt when a file does not match its manifest hash.
    std::optional<std::map<std::string, MSeries>> load(const std::string& key) const
    {
        const fs::path dir = entry(key);
        const fs::path manifest = dir / "manifest.json";
        if (!fs::exists(manifest)) {
            return std::nullopt;
        }
        nlohmann::json mf;
        try {
            mf = nlohmann::json::parse(read_file(manifest));
        } catch (const nlohmann::json::exception& ex) {
            throw CacheCorrupt("unreadable manifest " + manifest.string() + ": " + ex.what());
        }
        if (!mf.contains("files") || !mf["files"].is_object()) {
            throw CacheCorrupt("manifest " + manifest.string() + " has no file table");
        }
        std::map<std::string, MSeries> out;
        for (const auto& [name, hash] : mf["files"].items()) {
            const fs::path file = dir / (name + ".json");
            if (!fs::exists(file)) {
                throw CacheCorrupt("missing cache file " + file.string());
            }
            const std::string data = read_file(file);
            if (!hash.is_string() || sha256_hex(data) != hash.get<std::string>()) {
                throw CacheCorrupt("hash mismatch for " + file.string());
            }
            try {
                out.emplace(name, json::parse_series(nlohmann::json::parse(data), name));
            } catch (const std::exception& ex) {
                throw CacheCorrupt("malformed cache file " + file.string() + ": " + ex.what());
            }
        }
        return out;
    }

    void store(const std::string& key, const std::map<std::string, MSeries>& series) const
    {
        const fs::path dir = entry(key);
        fs::create_directories(dir);
        nlohmann::json files = nlohmann::json::object();
        for (const auto& [name, s] : series) {
            const std::string data = json::series_json(s).dump() + "\n";
            write_file(dir / (name + ".json"), data);
            files[name] = sha256_hex(data);
        }
        // the manifest goes last so that an interrupted store reads as a miss
        write_file(dir / "manifest.json", nlohmann::json{{"key", key}, {"files", files}}.dump(2) + "\n");
    }

    void erase(const std::string& key) const { fs::remove_all(entry(key)); }

private:
    fs::path root_;
};

} // namespace mirrorint::cli
