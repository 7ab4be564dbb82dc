// Copyright 2026 The qenm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qenm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qenm::io {

std::string format_double(double value) {
    if (value == 0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) {
        throw std::invalid_argument("csv header is empty");
    }
    for (std::size_t i = 0; i < header.size(); i++) {
        text_ += (i ? "," : "") + header[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string> &cells) {
    if (cells.size() != columns_) {
        throw std::invalid_argument("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                                    std::to_string(columns_));
    }
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (cells[i].find_first_of(",\"\n") != std::string::npos) {
            throw std::invalid_argument("csv cell needs quoting: " + cells[i]);
        }
        text_ += (i ? "," : "") + cells[i];
    }
    text_ += '\n';
    rows_++;
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string xml_escape(const std::string &text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 60;
const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v, bool log_axis) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", log_axis ? std::pow(10.0, v) : v);
    return buf;
}

struct Axis {
    double lo = 0;
    double hi = 1;
    bool log = false;

    double map(double v) const { return log ? std::log10(v) : v; }
};

Axis make_axis(const std::vector<PlotSeries> &series, bool use_x, bool log_axis) {
    Axis axis;
    axis.log = log_axis;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto &s : series) {
        for (double v : use_x ? s.x : s.y) {
            if (log_axis && !(v > 0)) {
                throw std::invalid_argument("log axis needs positive values");
            }
            if (std::isfinite(v)) {
                lo = std::min(lo, axis.map(v));
                hi = std::max(hi, axis.map(v));
            }
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0;
        hi = 1;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    axis.lo = lo - pad;
    axis.hi = hi + pad;
    return axis;
}

}  // namespace

std::string svg_plot(const std::vector<PlotSeries> &series, const PlotOptions &options) {
    const Axis ax = make_axis(series, true, options.log_x);
    const Axis ay = make_axis(series, false, options.log_y);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return kTop + ph - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(options.title) << "</text>\n";
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; i++) {
        const double fx = ax.lo + (ax.hi - ax.lo) * i / 4;
        const double sx = kLeft + pw * i / 4;
        out << "<line x1=\"" << num(sx) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx) << "\" y2=\""
            << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(sx) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
            << tick_label(fx, ax.log) << "</text>\n";
        const double fy = ay.lo + (ay.hi - ay.lo) * i / 4;
        const double sy = kTop + ph - ph * i / 4;
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(kLeft) << "\" y2=\""
            << num(sy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy + 4) << "\" text-anchor=\"end\">"
            << tick_label(fy, ay.log) << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\">" << xml_escape(options.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << num(kTop + ph / 2) << ")\">" << xml_escape(options.y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); i++) {
        const auto &s = series[i];
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("plot series has mismatched lengths");
        }
        const char *color = kPalette[i % std::size(kPalette)];
        if (s.draw_line && s.x.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t p = 0; p < s.x.size(); p++) {
                out << (p ? " " : "") << num(px(s.x[p])) << ',' << num(py(s.y[p]));
            }
            out << "\"/>\n";
        }
        if (s.draw_points) {
            for (std::size_t p = 0; p < s.x.size(); p++) {
                out << "<circle cx=\"" << num(px(s.x[p])) << "\" cy=\"" << num(py(s.y[p]))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            }
        }
        const double ly = kTop + 14 + 18 * static_cast<double>(i);
        out << "<rect x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
            << color << "\"/>\n";
        out << "<text x=\"" << num(kWidth - kRight + 28) << "\" y=\"" << num(ly) << "\">" << xml_escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace qenm::io
