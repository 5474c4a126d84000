#include "output.hpp"

#include <charconv>
#include <fstream>

#include <polaron/error.hpp>

namespace polaron::app {

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string spectrum_csv(std::span<const SpectralResult> results) {
  std::string out(kSpectrumHeader);
  out += '\n';
  for (const SpectralResult& r : results) {
    const std::string prefix = std::to_string(r.k_index) + ',' + format_double(r.k_value) + ',';
    for (std::size_t j = 0; j < r.size(); ++j) {
      out += prefix;
      out += format_double(r.omega_hz[j]);
      out += ',';
      out += format_double(r.energies[j]);
      out += ',';
      out += format_double(r.density[j]);
      out += '\n';
    }
  }
  return out;
}

namespace {

template <class T>
T field(std::string_view& line, int line_no) {
  const auto comma = line.find(',');
  const std::string_view item = line.substr(0, comma);
  line.remove_prefix(comma == std::string_view::npos ? line.size() : comma + 1);
  T v{};
  const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
  if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
    throw IoError("spectrum csv line " + std::to_string(line_no) + ": bad field '" +
                  std::string(item) + "'");
  }
  return v;
}

}  // namespace

std::vector<SpectrumRow> parse_spectrum_csv(std::string_view text) {
  std::vector<SpectrumRow> rows;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (++line_no == 1) {
      if (line != kSpectrumHeader) throw IoError("spectrum csv: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    SpectrumRow r;
    r.k_index = field<int>(line, line_no);
    r.k_value = field<double>(line, line_no);
    r.omega_hz = field<double>(line, line_no);
    r.omega_dimensionless = field<double>(line, line_no);
    r.spectral_density = field<double>(line, line_no);
    if (!line.empty()) throw IoError("spectrum csv line " + std::to_string(line_no) + ": extra fields");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace polaron::app
