// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"

namespace latham::cli {

/// Buffered writer that lands atomically (temp file + rename), LF endings,
/// with the resolved config embedded as a comment header.
class OutputFile {
public:
    OutputFile(const std::filesystem::path& dir, const std::string& name,
               const std::string& command, const ExperimentConfig& cfg)
        : path_(dir / name) {
        os_ << "# latham " << command << "\n";
        for (const auto& [k, v] : cfg.resolved) os_ << "# " << k << " = " << v << "\n";
    }

    template <typename T>
    OutputFile& operator<<(const T& v) {
        os_ << v;
        return *this;
    }

    /// 17 significant digits, shortest round-trip style.
    static std::string num(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    void commit() {
        const std::filesystem::path tmp = path_.string() + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw Error("cannot write " + tmp.string());
            f << os_.str();
        }
        std::filesystem::rename(tmp, path_);
    }

private:
    std::filesystem::path path_;
    std::ostringstream os_;
};

}  // namespace latham::cli
