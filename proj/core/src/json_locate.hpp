#pragma once

#include <cctype>
#include <cstddef>
#include <string>

namespace alexgeo::detail {

// 1-based line of a byte offset.
inline int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Walks syntactically valid JSON and returns the byte offset where the value at
// a path like "$.vertices[2].x" starts. Falls back to the deepest prefix found.
class PathLocator {
 public:
  PathLocator(const std::string& text, const std::string& path) : t_(text), target_(path) {}

  std::size_t find() {
    best_ = 0;
    i_ = 0;
    value("$");
    return best_;
  }

 private:
  const std::string& t_;
  std::string target_;
  std::size_t i_ = 0;
  std::size_t best_ = 0;
  std::size_t best_len_ = 0;

  void ws() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }

  std::string str() {
    std::string s;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') ++i_;
      if (i_ < t_.size()) s += t_[i_++];
    }
    ++i_;
    return s;
  }

  void mark(const std::string& path, std::size_t at) {
    if (target_.compare(0, path.size(), path) != 0) return;
    const bool boundary = target_.size() == path.size() || target_[path.size()] == '.' ||
                          target_[path.size()] == '[';
    if (boundary && path.size() >= best_len_) {
      best_ = at;
      best_len_ = path.size();
    }
  }

  void value(const std::string& path) {
    ws();
    mark(path, i_);
    if (i_ >= t_.size()) return;
    if (t_[i_] == '{') {
      ++i_;
      ws();
      while (i_ < t_.size() && t_[i_] != '}') {
        const std::size_t key_at = i_;
        const std::string key = str();
        mark(path + "." + key, key_at);
        ws();
        ++i_;  // ':'
        value(path + "." + key);
        ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        ws();
      }
      ++i_;
    } else if (t_[i_] == '[') {
      ++i_;
      ws();
      int k = 0;
      while (i_ < t_.size() && t_[i_] != ']') {
        value(path + "[" + std::to_string(k++) + "]");
        ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        ws();
      }
      ++i_;
    } else if (t_[i_] == '"') {
      str();
    } else {
      while (i_ < t_.size() && t_[i_] != ',' && t_[i_] != ']' && t_[i_] != '}' &&
             !std::isspace(static_cast<unsigned char>(t_[i_])))
        ++i_;
    }
  }
};

// "byte N" or a JSON path, turned into "file:line".
inline std::string locate(const std::string& file, const std::string& text,
                          const std::string& location) {
  std::size_t at = 0;
  if (location.rfind("byte ", 0) == 0) {
    at = std::stoul(location.substr(5));
    if (at > 0) --at;
  } else if (!location.empty() && location[0] == '$') {
    at = PathLocator(text, location).find();
  }
  return file + ":" + std::to_string(line_of(text, at));
}

}  // namespace alexgeo::detail
