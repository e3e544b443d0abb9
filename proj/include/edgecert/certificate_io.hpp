#pragma once

#include <string>

#include "edgecert/certifier.hpp"

namespace edgecert {

inline constexpr std::size_t kMaxListedNonPass = 1000;

struct CertificateFormat {
  bool timings = true;
  int indent = 2;
};

/// JSON document with a fixed field order.
std::string certificate_to_json(const Certificate& c, CertificateFormat fmt = {});

/// Writes via a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& text);

const char* tool_version();

}  // namespace edgecert
