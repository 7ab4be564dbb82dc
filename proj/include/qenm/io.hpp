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

#ifndef QENM_IO_HPP
#define QENM_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace qenm::io {

/// Shortest round-trip decimal text ("%.17g"), locale independent.
std::string format_double(double value);

class CsvWriter {
   public:
    explicit CsvWriter(std::vector<std::string> header);

    void row(const std::vector<std::string> &cells);
    std::size_t rows() const { return rows_; }
    const std::string &str() const { return text_; }

   private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

void write_text(const std::filesystem::path &path, const std::string &content);
std::string read_text(const std::filesystem::path &path);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool draw_line = false;
    bool draw_points = true;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

/// Self-contained SVG scatter/line chart.
std::string svg_plot(const std::vector<PlotSeries> &series, const PlotOptions &options);

std::string xml_escape(const std::string &text);

}  // namespace qenm::io

#endif
