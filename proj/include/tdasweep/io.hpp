#pragma once

// Dataset ingestion (IDX, labeled CSV) and feature-matrix CSV output.
//
// IDX: 4-byte big-endian magic, one 4-byte big-endian size per dimension, raw u8 payload.
//   images: magic 0x00000803, dims (n, rows, cols)
//   labels: magic 0x00000801, dims (n)
//
// Image CSV: one image per line, optional leading label, then rows*cols*channels
// intensities in channel-major order (all of channel 0 row-major, then channel 1, ...).
//
// Feature CSV: header "label,f0,f1,..." (or "f0,..." when unlabeled), then one line per image.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"

namespace tdasweep {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

namespace detail {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return bytes;
}

inline std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset,
                               const std::filesystem::path& path) {
  if (offset + 4 > bytes.size()) throw FormatError("'" + path.string() + "': truncated IDX header");
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

inline std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << "0x" << std::hex;
  os.width(8);
  os.fill('0');
  os << v;
  return os.str();
}

inline void check_magic(std::uint32_t got, std::uint32_t want, const std::filesystem::path& path) {
  if (got != want) {
    throw FormatError("'" + path.string() + "': bad IDX magic " + hex32(got) + " (expected " + hex32(want) + ")");
  }
}

inline void put_be32(std::ostream& os, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                     static_cast<char>(v)};
  os.write(b, 4);
}

inline std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

template <typename Int>
void append_int(std::string& buf, Int v) {
  char tmp[24];
  const auto res = std::to_chars(tmp, tmp + sizeof tmp, v);
  buf.append(tmp, res.ptr);
}

}  // namespace detail

/// Loads an IDX image file and, optionally, its label file. Images are single-channel.
inline Dataset load_idx(const std::filesystem::path& image_path,
                        const std::optional<std::filesystem::path>& label_path = std::nullopt) {
  const auto bytes = detail::read_file(image_path);
  detail::check_magic(detail::read_be32(bytes, 0, image_path), kIdxImageMagic, image_path);
  const std::size_t n = detail::read_be32(bytes, 4, image_path);
  const std::size_t rows = detail::read_be32(bytes, 8, image_path);
  const std::size_t cols = detail::read_be32(bytes, 12, image_path);
  if (rows == 0 || cols == 0) throw FormatError("'" + image_path.string() + "': zero image dimension");

  const std::size_t per_image = rows * cols;
  const std::size_t payload = bytes.size() - 16;
  if (payload < n * per_image) {
    throw FormatError("'" + image_path.string() + "': truncated payload, header declares " + std::to_string(n) +
                      " images of " + std::to_string(rows) + "x" + std::to_string(cols) + " but only " +
                      std::to_string(payload) + " bytes follow");
  }

  Dataset ds;
  ds.images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(16 + i * per_image);
    ds.images.emplace_back(rows, cols, 1, std::vector<Pixel>(first, first + static_cast<std::ptrdiff_t>(per_image)));
  }

  if (label_path) {
    const auto lbytes = detail::read_file(*label_path);
    detail::check_magic(detail::read_be32(lbytes, 0, *label_path), kIdxLabelMagic, *label_path);
    const std::size_t n_labels = detail::read_be32(lbytes, 4, *label_path);
    if (n_labels != n) {
      throw FormatError("label count " + std::to_string(n_labels) + " in '" + label_path->string() +
                        "' does not match image count " + std::to_string(n));
    }
    if (lbytes.size() - 8 < n_labels) throw FormatError("'" + label_path->string() + "': truncated payload");
    ds.labels.emplace(lbytes.begin() + 8, lbytes.begin() + 8 + static_cast<std::ptrdiff_t>(n_labels));
  }
  return ds;
}

/// Writes a single-channel dataset as an IDX pair; labels are written only when a path is given.
inline void write_idx(const Dataset& ds, const std::filesystem::path& image_path,
                      const std::optional<std::filesystem::path>& label_path = std::nullopt) {
  ds.validate();
  if (ds.channels() > 1) throw std::invalid_argument("IDX output supports single-channel images only");
  auto out = detail::open_for_write(image_path, std::ios::binary);
  detail::put_be32(out, kIdxImageMagic);
  detail::put_be32(out, static_cast<std::uint32_t>(ds.size()));
  detail::put_be32(out, static_cast<std::uint32_t>(ds.rows()));
  detail::put_be32(out, static_cast<std::uint32_t>(ds.cols()));
  for (const auto& img : ds.images) {
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.size()));
  }
  detail::finish_write(out, image_path);

  if (label_path) {
    if (!ds.labels) throw std::invalid_argument("dataset has no labels to write");
    auto lout = detail::open_for_write(*label_path, std::ios::binary);
    detail::put_be32(lout, kIdxLabelMagic);
    detail::put_be32(lout, static_cast<std::uint32_t>(ds.size()));
    for (int label : *ds.labels) lout.put(static_cast<char>(label));
    detail::finish_write(lout, *label_path);
  }
}

/// Loads an image CSV. Errors name the 1-based line number.
inline Dataset load_csv(const std::filesystem::path& path, bool has_label, std::size_t rows, std::size_t cols,
                        std::size_t channels) {
  if (rows == 0 || cols == 0 || channels == 0) throw std::invalid_argument("CSV geometry must be positive");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  const std::size_t plane = rows * cols;
  const std::size_t n_pixels = plane * channels;
  const std::size_t n_fields = n_pixels + (has_label ? 1 : 0);

  Dataset ds;
  if (has_label) ds.labels.emplace();

  std::string line;
  std::vector<int> fields;
  fields.reserve(n_fields);
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    fields.clear();
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const auto tok = rest.substr(0, comma);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": field " + std::to_string(fields.size() + 1) +
                          " is not an integer: '" + std::string(tok) + "'");
      }
      fields.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != n_fields) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(n_fields) +
                        " fields, got " + std::to_string(fields.size()));
    }

    const std::size_t base = has_label ? 1 : 0;
    std::vector<Pixel> px(n_pixels);
    for (std::size_t k = 0; k < n_pixels; ++k) {
      const int v = fields[base + k];
      if (v < 0 || v > 255) {
        throw FormatError("line " + std::to_string(line_no) + ": intensity " + std::to_string(v) +
                          " outside [0, 255]");
      }
      // channel-major on disk, interleaved in memory
      const std::size_t ch = k / plane;
      const std::size_t pos = k % plane;
      px[pos * channels + ch] = static_cast<Pixel>(v);
    }
    ds.images.emplace_back(rows, cols, channels, std::move(px));
    if (has_label) ds.labels->push_back(fields[0]);
  }
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return ds;
}

/// Writes a dataset in the image CSV format read by load_csv.
inline void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  ds.validate();
  auto out = detail::open_for_write(path);
  const std::size_t plane = ds.rows() * ds.cols();
  const std::size_t channels = ds.channels();
  std::string buf;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    buf.clear();
    if (ds.labels) {
      detail::append_int(buf, (*ds.labels)[i]);
      buf.push_back(',');
    }
    const auto px = ds.images[i].pixels();
    for (std::size_t ch = 0; ch < channels; ++ch) {
      for (std::size_t pos = 0; pos < plane; ++pos) {
        detail::append_int(buf, int{px[pos * channels + ch]});
        buf.push_back(',');
      }
    }
    buf.back() = '\n';
    out << buf;
  }
  detail::finish_write(out, path);
}

inline void write_features(const FeatureMatrix& m, std::ostream& out) {
  std::string buf;
  const bool labeled = m.labeled();
  if (labeled) buf += "label,";
  for (std::size_t j = 0; j < m.n_cols(); ++j) {
    buf.push_back('f');
    detail::append_int(buf, j);
    buf.push_back(',');
  }
  if (!buf.empty()) buf.pop_back();
  buf.push_back('\n');
  out << buf;

  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    buf.clear();
    if (labeled) {
      detail::append_int(buf, (*m.labels())[i]);
      buf.push_back(',');
    }
    for (auto v : m.row(i)) {
      detail::append_int(buf, v);
      buf.push_back(',');
    }
    if (!buf.empty() && buf.back() == ',') buf.pop_back();
    buf.push_back('\n');
    out << buf;
  }
}

inline void write_features(const FeatureMatrix& m, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path, std::ios::out | std::ios::binary);
  write_features(m, out);
  detail::finish_write(out, path);
}

/// Reads a feature CSV produced by write_features.
inline FeatureMatrix read_features(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw FormatError("'" + path.string() + "': missing header");
  const bool labeled = line.starts_with("label");
  std::size_t n_cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (labeled) --n_cols;
  if (line == "label") n_cols = 0;

  std::vector<Count> values;
  std::vector<int> labels;
  std::size_t n_rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string_view rest = line;
    std::size_t fields = 0;
    while (true) {
      const auto comma = rest.find(',');
      const auto tok = rest.substr(0, comma);
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": not an integer: '" + std::string(tok) + "'");
      }
      if (labeled && fields == 0) {
        labels.push_back(static_cast<int>(v));
      } else {
        values.push_back(static_cast<Count>(v));
      }
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields != n_cols + (labeled ? 1 : 0)) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(n_cols + (labeled ? 1 : 0)) + " fields, got " + std::to_string(fields));
    }
    ++n_rows;
  }
  std::optional<std::vector<int>> lab;
  if (labeled) lab = std::move(labels);
  return FeatureMatrix(n_rows, n_cols, std::move(values), std::move(lab));
}

}  // namespace tdasweep
