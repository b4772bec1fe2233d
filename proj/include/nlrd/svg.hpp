#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nlrd {

/// Minimal SVG line/scatter plot: enough to eyeball profiles, traces and
/// threshold curves without a plotting dependency.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel);

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color, double width = 1.5, bool dashed = false);
    void scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::string& color, double radius = 3.0);
    void vline(double x, const std::string& color, bool dashed = true);
    /// Extra text placed under the title, e.g. a legend line.
    void note(const std::string& text);

    void write(const std::filesystem::path& path) const;

  private:
    struct Series {
        enum class Type { Line, Scatter, VLine } type;
        std::vector<double> xs, ys;
        std::string color;
        double width_or_radius;
        bool dashed;
    };
    void include_range(const std::vector<double>& xs, const std::vector<double>& ys);

    std::string title_, xlabel_, ylabel_;
    std::vector<std::string> notes_;
    std::vector<Series> series_;
    double xmin_ = 0, xmax_ = 1, ymin_ = 0, ymax_ = 1;
    bool has_data_ = false;
};

} // namespace nlrd
