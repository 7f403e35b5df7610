#include "fundom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fundom {

namespace {
struct Box {
    double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
    void include(double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
};
} // namespace

std::string render_svg(const RunResult &r, const Family &fam) {
    const double W = 1000, H = 1000;
    Box box;
    struct Item {
        bool plane;
        double px, py, rad; // circle, or the line through (px,py) with normal (nx,ny)
        double nx, ny;
        bool bold;
    };
    std::vector<Item> items;
    std::set<int> rep_set(r.reps.begin(), r.reps.end());
    for (size_t i = 0; i < r.walls.size(); i++) {
        const auto &w = r.walls[i];
        Item it{};
        it.bold = rep_set.count((int)i) > 0;
        if (w.upper.is_plane) {
            double vx = w.upper.center_or_v.re.to_double(), vy = w.upper.center_or_v.im.to_double();
            double v2 = vx * vx + vy * vy;
            if (v2 < 1e-300) continue;
            it.plane = true;
            // point -v/2 on the line, normal v
            it.px = -vx / 2;
            it.py = -vy / 2;
            it.nx = vx;
            it.ny = vy;
            box.include(it.px, it.py);
        } else {
            it.plane = false;
            it.px = w.upper.center_or_v.re.to_double();
            it.py = w.upper.center_or_v.im.to_double();
            it.rad = std::sqrt(w.upper.r2.to_double());
            box.include(it.px - it.rad, it.py - it.rad);
            box.include(it.px + it.rad, it.py + it.rad);
        }
        items.push_back(it);
    }
    // cusp cell outline, if any
    std::vector<std::pair<double, double>> cell;
    if (!fam.cocompact()) {
        for (const auto &v : fam.cusp_data().cell) {
            cell.push_back({v[0].to_double(), v[1].to_double()});
            box.include(cell.back().first, cell.back().second);
        }
    }
    double span = std::max(box.x1 - box.x0, box.y1 - box.y0) * 1.1 + 1e-9;
    double cx = (box.x0 + box.x1) / 2, cy = (box.y0 + box.y1) / 2;
    double scale = W / span;
    auto X = [&](double x) { return (x - cx) * scale + W / 2; };
    auto Y = [&](double y) { return H / 2 - (y - cy) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << W << "\" y2=\"" << Y(0)
       << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << H
       << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    // unit circle (stabilizer region boundary where it matters)
    os << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << scale
       << "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>\n";
    if (!cell.empty()) {
        os << "<polygon points=\"";
        for (auto &[x, y] : cell) os << X(x) << "," << Y(y) << " ";
        os << "\" fill=\"none\" stroke=\"#2060c0\" stroke-width=\"2\"/>\n";
    }
    for (const auto &it : items) {
        const char *color = it.bold ? "#c02020" : "#404040";
        double width = it.bold ? 3.0 : 1.0;
        if (it.plane) {
            // draw the full chord of the canvas along the line
            double tx = -it.ny, ty = it.nx;
            double L = span;
            os << "<line x1=\"" << X(it.px - tx * L) << "\" y1=\"" << Y(it.py - ty * L)
               << "\" x2=\"" << X(it.px + tx * L) << "\" y2=\"" << Y(it.py + ty * L) << "\" stroke=\""
               << color << "\" stroke-width=\"" << width << "\"/>\n";
        } else if (fam.dimension() == 2) {
            // upper half-plane picture: semicircle over the real axis
            os << "<path d=\"M " << X(it.px - it.rad) << " " << Y(0) << " A " << it.rad * scale << " "
               << it.rad * scale << " 0 0 1 " << X(it.px + it.rad) << " " << Y(0) << "\" fill=\"none\" stroke=\""
               << color << "\" stroke-width=\"" << width << "\"/>\n";
        } else {
            os << "<circle cx=\"" << X(it.px) << "\" cy=\"" << Y(it.py) << "\" r=\"" << it.rad * scale
               << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
        }
    }
    os << "<text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"16\">" << r.family
       << "  scale: 1 unit = " << scale << " px</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace fundom
