#include "gw2/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "gw2/mc.hpp"

namespace gw2 {

MeanStderr mean_stderr(const std::vector<std::complex<double>>& samples) {
    MeanStderr ms;
    const std::size_t n = samples.size();
    if (n == 0) return ms;
    ms.mean = pairwise_sum(samples) / static_cast<double>(n);
    if (n < 2) return ms;
    std::vector<std::complex<double>> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> d = samples[i] - ms.mean;
        sq[i] = {d.real() * d.real(), d.imag() * d.imag()};
    }
    const std::complex<double> var = pairwise_sum(sq) / static_cast<double>(n - 1);
    ms.stderr_ = std::sqrt((var.real() + var.imag()) / static_cast<double>(n));
    return ms;
}

}  // namespace gw2

namespace gw2::io {

std::string csv_escape(const std::string& field) {
    bool needs_quotes = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

std::string resolve_output_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("GW2_OUTPUT_DIR")) return env;
    return ".";
}

}  // namespace gw2::io
