#include "adobing/model_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "adobing/errors.hpp"

namespace adobing {

namespace {

constexpr int kFormatVersion = 1;

std::string weight_text(const LinearModel& m) {
    std::string s;
    char buf[32];
    for (int i = 0; i < kNgDim; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", m.w[i]);
        if (i) s += ' ';
        s += buf;
    }
    return s;
}

}  // namespace

std::uint64_t model_hash(const LinearModel& m) {
    const std::string text = weight_text(m);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void save_model(const std::string& path, const LinearModel& m,
                const std::optional<ModelProvenance>& prov) {
    validate(m);
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << "format_version: " << kFormatVersion << "\n";
    out << "weights: " << weight_text(m) << "\n";
    if (prov) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016" PRIx64, prov->base_model_hash);
        out << "base_model_hash: " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", prov->C);
        out << "C: " << buf << "\n";
        out << "seed: " << prov->seed << "\n";
        out << "spec: " << prov->spec << "\n";
    }
    if (!out) throw io_error("write failed: " + path);
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    ModelFile mf;
    ModelProvenance prov;
    bool has_version = false, has_weights = false, has_prov = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw parse_error(path + ": expected 'key: value'", line_no);
        const std::string key = line.substr(0, colon);
        std::istringstream value(line.substr(colon + 1));
        if (key == "format_version") {
            int v = 0;
            if (!(value >> v) || v != kFormatVersion)
                throw parse_error(path + ": unsupported format_version", line_no);
            has_version = true;
        } else if (key == "weights") {
            for (int i = 0; i < kNgDim; ++i)
                if (!(value >> mf.model.w[i]))
                    throw parse_error(path + ": expected 64 weights", line_no);
            double extra;
            if (value >> extra) throw parse_error(path + ": expected 64 weights", line_no);
            has_weights = true;
        } else if (key == "base_model_hash") {
            std::string hex;
            value >> hex;
            prov.base_model_hash = std::strtoull(hex.c_str(), nullptr, 16);
            has_prov = true;
        } else if (key == "C") {
            if (!(value >> prov.C)) throw parse_error(path + ": bad C value", line_no);
            has_prov = true;
        } else if (key == "seed") {
            if (!(value >> prov.seed)) throw parse_error(path + ": bad seed value", line_no);
            has_prov = true;
        } else if (key == "spec") {
            std::string rest;
            std::getline(value, rest);
            const std::size_t start = rest.find_first_not_of(' ');
            prov.spec = start == std::string::npos ? "" : rest.substr(start);
            has_prov = true;
        } else {
            throw parse_error(path + ": unknown key '" + key + "'", line_no);
        }
    }
    if (!has_version) throw parse_error(path + ": missing format_version");
    if (!has_weights) throw parse_error(path + ": missing weights");
    validate(mf.model);
    if (has_prov) mf.provenance = prov;
    return mf;
}

}  // namespace adobing
