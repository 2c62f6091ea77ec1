#pragma once

#include "orbitlab/error.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace orbitlab::io {

/// Writes to a sibling temporary file, then renames over the target.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Validation, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error(ErrorKind::Validation, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace orbitlab::io
