#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "gesturegate/motion_data.hpp"
#include "gesturegate/synth.hpp"

namespace gesturegate {

/// Writes every sequence of a generated dataset under `dir` (one
/// subdirectory per activity) plus a manifest.json listing files, labels and
/// seeds. Returns the manifest path. Files are written atomically.
std::filesystem::path write_dataset(const GeneratedDataset& dataset,
                                    const std::filesystem::path& dir,
                                    FileFormat format = FileFormat::csv);

/// Loads the sequences listed in a manifest. Entries whose file appears in
/// `exclude` (manifest-relative paths, as produced by an exclude-list file)
/// are skipped.
Dataset load_dataset(const std::filesystem::path& manifest_path,
                     const std::set<std::string>& exclude = {});

/// Reads an exclude-list file: one manifest-relative path per line,
/// '#' starts a comment, blank lines ignored.
std::set<std::string> read_exclude_list(const std::filesystem::path& path);

/// Write-to-temp-then-rename, so readers never observe partial files.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace gesturegate
