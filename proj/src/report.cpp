#include "minhyp/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace minhyp::report {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return x;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("table row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json cell_json(const Cell& c) {
  struct Visitor {
    Json operator()(double x) const { return number(x); }
    Json operator()(long long x) const { return x; }
    Json operator()(const std::string& s) const { return s; }
    Json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < columns_.size(); ++j) out << (j ? "," : "") << csv_escape(columns_[j]);
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_escape(cell_text(row[j]));
    out << '\n';
  }
  return out.str();
}

Json Table::to_json() const {
  Json arr = Json::array();
  for (const auto& row : rows_) {
    Json obj = Json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[columns_[j]] = cell_json(row[j]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::vector<std::string> missing_error_columns(const Table& t) {
  const std::set<std::string> names(t.columns().begin(), t.columns().end());
  std::vector<std::string> missing;
  for (std::size_t j = 0; j < t.columns().size(); ++j) {
    const std::string& name = t.columns()[j];
    if (name.size() > 4 && name.compare(name.size() - 4, 4, "_err") == 0) continue;
    bool is_double = false;
    for (const auto& row : t.rows())
      if (std::holds_alternative<double>(row[j])) is_double = true;
    if (is_double && !names.count(name + "_err")) missing.push_back(name);
  }
  return missing;
}

Json document(const std::string& kind) {
  Json j = Json::object();
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

double disk_coordinate(double rho) { return std::tanh(0.5 * rho); }

std::string palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % (sizeof colors / sizeof colors[0])];
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Fixed 4-decimal pixel coordinates keep the files small and stable.
std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

std::string to_svg(const Figure& fig) {
  constexpr double W = 640, H = 640, margin = 60;
  const double sx = (W - 2 * margin) / (fig.x_max - fig.x_min);
  const double sy = (H - 2 * margin) / (fig.y_max - fig.y_min);
  auto X = [&](double x) { return margin + (x - fig.x_min) * sx; };
  auto Y = [&](double y) { return H - margin - (y - fig.y_min) * sy; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << xml_escape(fig.title) << "</text>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << W - 2 * margin
      << "\" height=\"" << H - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (fig.y_min < 0.0 && fig.y_max > 0.0)
    out << "<line x1=\"" << px(X(fig.x_min)) << "\" y1=\"" << px(Y(0)) << "\" x2=\""
        << px(X(fig.x_max)) << "\" y2=\"" << px(Y(0)) << "\" stroke=\"#bbbbbb\"/>\n";
  for (double y : fig.reference_lines)
    out << "<line x1=\"" << px(X(fig.x_min)) << "\" y1=\"" << px(Y(y)) << "\" x2=\""
        << px(X(fig.x_max)) << "\" y2=\"" << px(Y(y))
        << "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(fig.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(fig.y_label) << "</text>\n";
  out << "<text x=\"" << margin << "\" y=\"" << H - margin + 16
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(fig.x_min)
      << "</text>\n";
  out << "<text x=\"" << W - margin << "\" y=\"" << H - margin + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << format_number(fig.x_max) << "</text>\n";

  for (std::size_t i = 0; i < fig.series.size(); ++i) {
    const Series& s = fig.series[i];
    if (s.points.empty()) continue;
    out << "<g>\n<title>" << xml_escape(s.label) << "</title>\n";
    if (s.markers) {
      for (const auto& p : s.points)
        out << "<circle cx=\"" << px(X(p[0])) << "\" cy=\"" << px(Y(p[1]))
            << "\" r=\"3\" fill=\"" << s.stroke << "\"/>\n";
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << s.stroke << "\" stroke-width=\"1.5\"";
      if (s.dashed) out << " stroke-dasharray=\"5,3\"";
      out << " points=\"";
      for (std::size_t k = 0; k < s.points.size(); ++k)
        out << (k ? " " : "") << px(X(s.points[k][0])) << ',' << px(Y(s.points[k][1]));
      out << "\"/>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << W - margin - 4 << "\" y=\"" << margin + 16 + 14 * static_cast<double>(i)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << s.stroke
        << "\">" << xml_escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory for " + path + ": " + ec.message());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace minhyp::report
