#ifndef GRAPHENE_NDR_SVG_HPP
#define GRAPHENE_NDR_SVG_HPP

#include <string>
#include <vector>

namespace graphene_ndr::svg {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

struct Marker {
    std::string label;
    double x, y;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<Marker> markers;
};

/// Line plot on a fixed 800x600 viewBox with linear axes.
std::string render(const Plot& plot);

}  // namespace graphene_ndr::svg

#endif
