#pragma once

// Sectioned key = value run configuration. Every key is declared in the
// schema with a type and default; unknown sections and keys are errors.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace usc::config {

enum class Type { number, integer, boolean, text, list };

struct KeySpec {
  std::string_view section;
  std::string_view key;
  Type type;
  std::string_view fallback;
  std::string_view choices = {};  // '|' separated, text keys only
};

std::span<const KeySpec> schema();

std::uint64_t fnv1a(std::string_view data);

class Config {
 public:
  static Config parse(std::string_view text, std::string source = "<string>");
  static Config load(const std::filesystem::path& path);

  /// Override (e.g. from a command-line flag); validated like a file entry.
  void set(std::string_view section, std::string_view key, std::string value);

  double number(std::string_view section, std::string_view key) const;
  int integer(std::string_view section, std::string_view key) const;
  std::uint64_t unsigned_integer(std::string_view section, std::string_view key) const;
  bool boolean(std::string_view section, std::string_view key) const;
  std::string text(std::string_view section, std::string_view key) const;
  std::vector<std::string> list(std::string_view section, std::string_view key) const;
  bool is_set(std::string_view section, std::string_view key) const;

  /// All schema keys with defaults filled, in schema order.
  std::string resolved() const;
  std::string digest() const;  // FNV-1a of resolved(), 16 hex digits

  const std::filesystem::path& base_dir() const { return base_dir_; }

 private:
  struct Entry {
    std::string value;
    std::string origin;  // "file:line" or "override"
  };
  const std::string& raw(std::string_view section, std::string_view key) const;
  std::string where(std::string_view section, std::string_view key) const;

  std::map<std::string, Entry, std::less<>> values_;
  std::string source_;
  std::filesystem::path base_dir_;
};

}  // namespace usc::config
