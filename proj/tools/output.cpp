#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace petlab::cli {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

struct CsvWriter::Impl {
  std::ofstream out;
  bool first_in_row = true;
};

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : impl_(std::make_unique<Impl>()) {
  impl_->out.open(path, std::ios::binary);
  if (!impl_->out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter::~CsvWriter() = default;

CsvWriter& CsvWriter::cell(const std::string& value) {
  if (!impl_->first_in_row) impl_->out << ',';
  impl_->out << quote(value);
  impl_->first_in_row = false;
  return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(long long value) { return cell(std::to_string(value)); }

void CsvWriter::end_row() {
  impl_->out << "\r\n";
  impl_->first_in_row = true;
}

Json number(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
               bool log_y) {
  constexpr double width = 640.0, height = 400.0, margin = 48.0;
  auto ty = [log_y](double y) { return log_y ? std::log10(y) : y; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && !(s.y[i] > 0.0)) continue;
      const double y = ty(s.y[i]);
      if (!std::isfinite(y) || !std::isfinite(s.x[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
      << "</text>\n"
      << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
      << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << margin << "\" y=\"" << height - margin + 16 << "\" font-size=\"10\">" << x0
      << "</text>\n"
      << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16
      << "\" text-anchor=\"end\" font-size=\"10\">" << x1 << "</text>\n"
      << "<text x=\"4\" y=\"" << height - margin << "\" font-size=\"10\">" << (log_y ? "1e" : "") << y0
      << "</text>\n"
      << "<text x=\"4\" y=\"" << margin + 4 << "\" font-size=\"10\">" << (log_y ? "1e" : "") << y1
      << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double y = ty(s.y[i]);
        if (!std::isfinite(y)) continue;
        out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(y) << "\" r=\"1.5\" fill=\"" << colour
            << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double y = ty(s.y[i]);
        if (!std::isfinite(y)) continue;
        out << px(s.x[i]) << ',' << py(y) << ' ';
      }
      out << "\"/>\n";
    }
    out << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 14 + 14 * k
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << colour << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

std::filesystem::path prepare_output(const std::string& dir) {
  const std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace petlab::cli
