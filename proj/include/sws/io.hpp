#pragma once

// Matrix ingestion and persistence.
//
//   CSV       comma-separated numbers, one matrix row per line.
//   Binary    "SWSMAT1\0", rows and cols as little-endian u64, then rows*cols
//             little-endian IEEE-754 doubles in row-major order.
//   PGM/PPM   P2/P5 and P3/P6, maxval <= 65535 (16-bit samples big-endian).
//             Height maps to rows, width to columns.
//   Triplets  first line "rows cols", then "row col weight" per line,
//             whitespace separated, 0-based. Unlisted cells are zero.
//             Blank lines and lines starting with '#' are ignored.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sws/core.hpp"

namespace sws {

/// Input could not be opened or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed content. line is 1-based (0 if not line-oriented); byte_offset
/// is the position in the stream where the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t byte_offset, const std::string& what)
      : std::runtime_error(source + ":" + (line ? std::to_string(line) : "byte " + std::to_string(byte_offset)) +
                           ": " + what),
        line_(line),
        byte_offset_(byte_offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t line_;
  std::size_t byte_offset_;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return bytes;
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_index(std::string_view s, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

/// Shortest text that parses back to exactly `v`.
/// Splits into lines, tracking 1-based numbers; strips a trailing '\r'.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = end + 1;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV

inline Matrix parse_matrix_csv(std::string_view text, const std::string& source = "<csv>") {
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t blank_after = 0;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (detail::trim(line).empty()) {
      if (rows > 0 && blank_after == 0) blank_after = line_no;
      return;
    }
    if (blank_after != 0) throw ParseError(source, blank_after, 0, "blank line inside matrix");
    std::size_t n = 0;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      double v = 0.0;
      if (!detail::parse_double(cell, v)) {
        throw ParseError(source, line_no, 0, "non-numeric cell '" + std::string(detail::trim(cell)) + "'");
      }
      data.push_back(v);
      ++n;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = n;
    } else if (n != cols) {
      throw ParseError(source, line_no, 0,
                       "ragged row: expected " + std::to_string(cols) + " cells, found " + std::to_string(n));
    }
    ++rows;
  });
  if (rows == 0) throw ParseError(source, 1, 0, "empty file");
  return Matrix(rows, cols, std::move(data));
}

inline Matrix read_matrix_csv(const std::string& path) { return parse_matrix_csv(detail::read_file(path), path); }

inline std::string format_matrix_csv(const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += detail::format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

inline void write_matrix_csv(const Matrix& m, const std::string& path) {
  detail::write_file(path, format_matrix_csv(m));
}

// ---------------------------------------------------------------------------
// Raw binary

inline constexpr std::string_view kBinaryMagic{"SWSMAT1\0", 8};

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

inline std::uint64_t get_u64(std::string_view in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

}  // namespace detail

inline std::string format_matrix_binary(const Matrix& m) {
  std::string out(kBinaryMagic);
  detail::put_u64(out, m.rows());
  detail::put_u64(out, m.cols());
  for (double v : m.data()) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

inline Matrix parse_matrix_binary(std::string_view bytes, const std::string& source = "<binary>") {
  if (bytes.size() < 24 || bytes.substr(0, 8) != kBinaryMagic) throw ParseError(source, 0, 0, "bad magic number");
  const std::uint64_t rows = detail::get_u64(bytes, 8);
  const std::uint64_t cols = detail::get_u64(bytes, 16);
  if (rows == 0 || cols == 0) throw ParseError(source, 0, 8, "zero dimension");
  if (cols > (bytes.size() - 24) / 8 / rows) throw ParseError(source, 0, bytes.size(), "truncated data");
  const std::size_t n = static_cast<std::size_t>(rows * cols);
  if (bytes.size() != 24 + 8 * n) throw ParseError(source, 0, 24 + 8 * n, "trailing bytes after data");
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = std::bit_cast<double>(detail::get_u64(bytes, 24 + 8 * i));
    if (!std::isfinite(data[i])) throw ParseError(source, 0, 24 + 8 * i, "non-finite value");
  }
  return Matrix(rows, cols, std::move(data));
}

inline Matrix read_matrix_binary(const std::string& path) {
  return parse_matrix_binary(detail::read_file(path), path);
}

inline void write_matrix_binary(const Matrix& m, const std::string& path) {
  detail::write_file(path, format_matrix_binary(m));
}

// ---------------------------------------------------------------------------
// PGM / PPM

enum class Channel { R = 0, G = 1, B = 2 };

inline Channel parse_channel(std::string_view s) {
  if (s == "R" || s == "r") return Channel::R;
  if (s == "G" || s == "g") return Channel::G;
  if (s == "B" || s == "b") return Channel::B;
  throw std::invalid_argument("unknown channel '" + std::string(s) + "' (expected R, G or B)");
}

namespace detail {

class PnmReader {
 public:
  PnmReader(std::string_view bytes, const std::string& source) : b_(bytes), src_(source) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(src_, 0, pos_, what); }

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      const char ch = b_[pos_];
      if (ch == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(b_[pos_] - '0');
      if (v > (1u << 30)) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail(pos_ >= b_.size() ? "truncated data" : "expected a decimal number");
    return v;
  }

  void single_whitespace() {
    if (pos_ >= b_.size() || !std::isspace(static_cast<unsigned char>(b_[pos_]))) fail("expected whitespace after header");
    ++pos_;
  }

  std::size_t binary_sample(std::size_t bytes_per_sample) {
    if (pos_ + bytes_per_sample > b_.size()) fail("truncated pixel data");
    std::size_t v = static_cast<unsigned char>(b_[pos_]);
    if (bytes_per_sample == 2) v = (v << 8) | static_cast<unsigned char>(b_[pos_ + 1]);
    pos_ += bytes_per_sample;
    return v;
  }

  std::size_t pos() const noexcept { return pos_; }
  std::string_view magic() const { return b_.substr(0, std::min<std::size_t>(2, b_.size())); }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view b_;
  const std::string& src_;
  std::size_t pos_ = 0;
};

/// Decodes P2/P3/P5/P6 and returns one channel (index into the samples of a pixel).
inline Matrix decode_pnm(std::string_view bytes, const std::string& source, bool want_color, std::size_t channel) {
  PnmReader rd(bytes, source);
  const std::string_view magic = rd.magic();
  bool ascii = false;
  std::size_t spp = 1;
  if (magic == "P2") ascii = true;
  else if (magic == "P5") ascii = false;
  else if (magic == "P3") ascii = true, spp = 3;
  else if (magic == "P6") ascii = false, spp = 3;
  else rd.fail("bad magic number");
  if ((spp == 3) != want_color) rd.fail(want_color ? "expected a PPM (P3/P6) image" : "expected a PGM (P2/P5) image");
  rd.advance(2);

  const std::size_t width = rd.number();
  const std::size_t height = rd.number();
  const std::size_t maxval = rd.number();
  if (width == 0 || height == 0) rd.fail("zero image dimension");
  if (maxval == 0 || maxval > 65535) rd.fail("maxval must be in 1..65535");
  const std::size_t bps = maxval < 256 ? 1 : 2;
  if (!ascii) {
    rd.single_whitespace();
    if (bytes.size() - rd.pos() < width * height * spp * bps) {
      throw ParseError(source, 0, bytes.size(), "truncated pixel data");
    }
  }

  std::vector<double> data(width * height);
  for (std::size_t i = 0; i < width * height; ++i) {
    for (std::size_t s = 0; s < spp; ++s) {
      const std::size_t v = ascii ? rd.number() : rd.binary_sample(bps);
      if (v > maxval) rd.fail("sample exceeds maxval");
      if (s == channel) data[i] = static_cast<double>(v);
    }
  }
  return Matrix(height, width, std::move(data));
}

}  // namespace detail

inline Matrix parse_pgm(std::string_view bytes, const std::string& source = "<pgm>") {
  return detail::decode_pnm(bytes, source, false, 0);
}

inline Matrix parse_ppm_channel(std::string_view bytes, Channel ch, const std::string& source = "<ppm>") {
  return detail::decode_pnm(bytes, source, true, static_cast<std::size_t>(ch));
}

inline Matrix read_pgm_channel(const std::string& path) { return parse_pgm(detail::read_file(path), path); }

inline Matrix read_ppm_channel(const std::string& path, Channel ch) {
  return parse_ppm_channel(detail::read_file(path), ch, path);
}

// ---------------------------------------------------------------------------
// Sparse triplets

struct SparseTriplets {
  struct Entry {
    std::size_t row = 0;
    std::size_t col = 0;
    double weight = 0.0;
  };
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;
};

inline SparseTriplets parse_sparse_triplets(std::string_view text, const std::string& source = "<triplets>") {
  SparseTriplets t;
  bool have_header = false;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') return;
    std::vector<std::string_view> tok;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > s) tok.push_back(line.substr(s, i - s));
    }
    if (!have_header) {
      if (tok.size() != 2 || !detail::parse_index(tok[0], t.rows) || !detail::parse_index(tok[1], t.cols)) {
        throw ParseError(source, line_no, 0, "expected header 'rows cols'");
      }
      if (t.rows == 0 || t.cols == 0) throw ParseError(source, line_no, 0, "dimensions must be >= 1");
      have_header = true;
      return;
    }
    SparseTriplets::Entry e;
    if (tok.size() != 3 || !detail::parse_index(tok[0], e.row) || !detail::parse_index(tok[1], e.col) ||
        !detail::parse_double(tok[2], e.weight)) {
      throw ParseError(source, line_no, 0, "expected 'row col weight'");
    }
    if (e.row >= t.rows || e.col >= t.cols) {
      throw ParseError(source, line_no, 0,
                       "index (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") out of bounds");
    }
    if (!seen.emplace(e.row, e.col).second) {
      throw ParseError(source, line_no, 0,
                       "duplicate cell (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")");
    }
    t.entries.push_back(e);
  });
  if (!have_header) throw ParseError(source, 1, 0, "empty file");
  return t;
}

inline Matrix densify(const SparseTriplets& t) {
  std::vector<double> data(t.rows * t.cols, 0.0);
  for (const auto& e : t.entries) data[e.row * t.cols + e.col] = e.weight;
  return Matrix(t.rows, t.cols, std::move(data));
}

inline Matrix read_sparse_triplets(const std::string& path) {
  return densify(parse_sparse_triplets(detail::read_file(path), path));
}

/// Writes the nonzero cells of m.
inline std::string format_sparse_triplets(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0.0)
        out += std::to_string(r) + " " + std::to_string(c) + " " + detail::format_double(m(r, c)) + "\n";
  return out;
}

inline void write_sparse_triplets(const Matrix& m, const std::string& path) {
  detail::write_file(path, format_sparse_triplets(m));
}

// ---------------------------------------------------------------------------
// Extension dispatch

enum class MatrixFormat { csv, binary, pgm, ppm, triplets };

inline MatrixFormat format_from_path(std::string_view path) {
  const auto dot = path.rfind('.');
  std::string ext = dot == std::string_view::npos ? "" : std::string(path.substr(dot + 1));
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == "csv") return MatrixFormat::csv;
  if (ext == "bin" || ext == "swsm") return MatrixFormat::binary;
  if (ext == "pgm") return MatrixFormat::pgm;
  if (ext == "ppm") return MatrixFormat::ppm;
  if (ext == "trip" || ext == "triplets" || ext == "tri") return MatrixFormat::triplets;
  throw std::invalid_argument("cannot infer matrix format from '" + std::string(path) +
                              "' (use .csv, .bin, .pgm, .ppm or .trip)");
}

inline Matrix read_matrix(const std::string& path, Channel ch = Channel::R) {
  switch (format_from_path(path)) {
    case MatrixFormat::csv: return read_matrix_csv(path);
    case MatrixFormat::binary: return read_matrix_binary(path);
    case MatrixFormat::pgm: return read_pgm_channel(path);
    case MatrixFormat::ppm: return read_ppm_channel(path, ch);
    case MatrixFormat::triplets: return read_sparse_triplets(path);
  }
  throw std::logic_error("unreachable");
}

inline void write_matrix(const Matrix& m, const std::string& path) {
  switch (format_from_path(path)) {
    case MatrixFormat::csv: return write_matrix_csv(m, path);
    case MatrixFormat::binary: return write_matrix_binary(m, path);
    case MatrixFormat::triplets: return write_sparse_triplets(m, path);
    case MatrixFormat::pgm:
    case MatrixFormat::ppm: throw std::invalid_argument("writing PGM/PPM is not supported; use .csv, .bin or .trip");
  }
}

}  // namespace sws
