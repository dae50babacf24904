#pragma once

// Input source descriptors. A source string names where a matrix comes from
// and how it is transformed, so any record can be traced back to its input:
//
//   gen:kind=blobs,rows=256,cols=256,seed=3,...   generated
//   file:path/to/matrix.csv                       read by extension
//
// followed by optional transforms applied left to right:
//   |channel=G     channel selection for .ppm inputs
//   |scale=K       K x K entry duplication
//   |normalize     zero-mean normalization

#include <string>
#include <string_view>
#include <vector>

#include "sws/core.hpp"
#include "sws/datagen.hpp"
#include "sws/io.hpp"

namespace sws {

struct SourceSpec {
  std::string base;  // "gen:..." or "file:..."
  Channel channel = Channel::R;
  bool has_channel = false;
  std::size_t scale = 1;
  bool normalize = false;
};

inline std::string describe(const SourceSpec& s) {
  std::string out = s.base;
  if (s.has_channel) out += std::string("|channel=") + "RGB"[static_cast<int>(s.channel)];
  if (s.scale != 1) out += "|scale=" + std::to_string(s.scale);
  if (s.normalize) out += "|normalize";
  return out;
}

inline SourceSpec parse_source(std::string_view text) {
  SourceSpec s;
  std::size_t bar = text.find('|');
  s.base = std::string(text.substr(0, bar));
  if (!s.base.starts_with("gen:") && !s.base.starts_with("file:")) {
    throw std::invalid_argument("source must start with 'gen:' or 'file:': '" + s.base + "'");
  }
  // Spell out every generator field so records do not depend on defaults.
  if (s.base.starts_with("gen:")) s.base = describe(parse_gen_description(s.base));
  while (bar != std::string_view::npos) {
    const std::size_t next = text.find('|', bar + 1);
    const std::string_view item = text.substr(bar + 1, next == std::string_view::npos ? text.npos : next - bar - 1);
    if (item == "normalize") {
      s.normalize = true;
    } else if (item.starts_with("scale=")) {
      s.scale = std::stoull(std::string(item.substr(6)));
      if (s.scale == 0) throw std::invalid_argument("scale must be >= 1");
    } else if (item.starts_with("channel=")) {
      s.channel = parse_channel(item.substr(8));
      s.has_channel = true;
    } else {
      throw std::invalid_argument("unknown source transform '" + std::string(item) + "'");
    }
    bar = next;
  }
  return s;
}

inline SourceSpec file_source(const std::string& path) { return {"file:" + path}; }
inline SourceSpec gen_source(const GenSpec& g) { return {describe(g)}; }

inline Matrix load_source(const SourceSpec& s) {
  Matrix m = s.base.starts_with("gen:") ? generate(parse_gen_description(s.base))
                                        : read_matrix(s.base.substr(5), s.channel);
  if (s.scale != 1) m = duplicate_scale(m, s.scale);
  if (s.normalize) m = normalize_zero_mean(m);
  return m;
}

inline Matrix load_source(std::string_view text) { return load_source(parse_source(text)); }

}  // namespace sws
