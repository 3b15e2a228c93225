#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace setdistill {

/// Axis-aligned box in normalized center format (cx, cy, w, h), w/h >= 0.
struct BoxCxCyWh {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;
};

/// Axis-aligned box in corner format (x1, y1, x2, y2), x2 >= x1, y2 >= y1.
struct BoxXyXy {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;
};

// Gradient w.r.t. the four coordinates of one box, in that box's field order.
using BoxGrad = std::array<double, 4>;

inline BoxXyXy to_xyxy(const BoxCxCyWh& b) {
    if (b.w < 0.0 || b.h < 0.0) {
        throw std::invalid_argument("to_xyxy: negative box extent");
    }
    return {b.cx - 0.5 * b.w, b.cy - 0.5 * b.h, b.cx + 0.5 * b.w, b.cy + 0.5 * b.h};
}

inline BoxCxCyWh from_xyxy(const BoxXyXy& b) {
    if (b.x2 < b.x1 || b.y2 < b.y1) {
        throw std::invalid_argument("from_xyxy: inverted corners");
    }
    return {0.5 * (b.x1 + b.x2), 0.5 * (b.y1 + b.y2), b.x2 - b.x1, b.y2 - b.y1};
}

inline double box_area(const BoxXyXy& b) {
    return (b.x2 - b.x1) * (b.y2 - b.y1);
}

namespace detail {

struct Overlap {
    double inter = 0.0;     // intersection area
    double uni = 0.0;       // union area
    double enclose = 0.0;   // area of the smallest enclosing box
    bool degenerate = false;
};

inline Overlap overlap(const BoxXyXy& a, const BoxXyXy& b) {
    Overlap o;
    const double area_a = box_area(a);
    const double area_b = box_area(b);
    if (area_a <= 0.0 || area_b <= 0.0) {
        o.degenerate = true;
        return o;
    }
    const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    o.inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
    o.uni = area_a + area_b - o.inter;
    o.enclose = (std::max(a.x2, b.x2) - std::min(a.x1, b.x1)) *
                (std::max(a.y2, b.y2) - std::min(a.y1, b.y1));
    return o;
}

}  // namespace detail

/// Intersection over union in [0, 1]. Zero-area boxes score 0 against anything.
inline double iou(const BoxXyXy& a, const BoxXyXy& b) {
    const auto o = detail::overlap(a, b);
    if (o.degenerate) return 0.0;
    return o.inter / o.uni;
}

/// Generalized IoU in (-1, 1]: iou - (enclose - union) / enclose.
/// Zero-area boxes score 0 (with zero gradient), matching the iou convention.
inline double giou(const BoxXyXy& a, const BoxXyXy& b) {
    const auto o = detail::overlap(a, b);
    if (o.degenerate) return 0.0;
    return o.inter / o.uni - (o.enclose - o.uni) / o.enclose;
}

/// L1 distance between boxes in center format: sum of |coordinate deltas|.
inline double l1_box(const BoxCxCyWh& a, const BoxCxCyWh& b) {
    return std::abs(a.cx - b.cx) + std::abs(a.cy - b.cy) +
           std::abs(a.w - b.w) + std::abs(a.h - b.h);
}

struct PairGrad {
    BoxGrad da{};  // d value / d a
    BoxGrad db{};  // d value / d b
};

/// Analytic gradient of giou(a, b) w.r.t. all 8 corner coordinates.
/// Subgradient conventions: ties in min/max attribute to box a; the clamped
/// intersection region and degenerate boxes get zero gradient.
inline PairGrad giou_grad(const BoxXyXy& a, const BoxXyXy& b) {
    PairGrad g;
    const double area_a = box_area(a);
    const double area_b = box_area(b);
    if (area_a <= 0.0 || area_b <= 0.0) return g;

    const double ix1 = std::max(a.x1, b.x1);
    const double iy1 = std::max(a.y1, b.y1);
    const double ix2 = std::min(a.x2, b.x2);
    const double iy2 = std::min(a.y2, b.y2);
    const double iw = ix2 - ix1;
    const double ih = iy2 - iy1;
    const bool has_inter = iw > 0.0 && ih > 0.0;
    const double inter = has_inter ? iw * ih : 0.0;
    const double uni = area_a + area_b - inter;

    const double ew = std::max(a.x2, b.x2) - std::min(a.x1, b.x1);
    const double eh = std::max(a.y2, b.y2) - std::min(a.y1, b.y1);
    const double enc = ew * eh;

    // dI per corner coordinate (zero when the boxes do not overlap)
    BoxGrad dI_a{}, dI_b{};
    if (has_inter) {
        // x side
        if (a.x1 >= b.x1) dI_a[0] = -ih; else dI_b[0] = -ih;
        if (a.x2 <= b.x2) dI_a[2] = ih;  else dI_b[2] = ih;
        // y side
        if (a.y1 >= b.y1) dI_a[1] = -iw; else dI_b[1] = -iw;
        if (a.y2 <= b.y2) dI_a[3] = iw;  else dI_b[3] = iw;
    }

    // dA for each box
    const BoxGrad dA_a = {-(a.y2 - a.y1), -(a.x2 - a.x1), a.y2 - a.y1, a.x2 - a.x1};
    const BoxGrad dA_b = {-(b.y2 - b.y1), -(b.x2 - b.x1), b.y2 - b.y1, b.x2 - b.x1};

    // dE per corner coordinate (the outer envelope)
    BoxGrad dE_a{}, dE_b{};
    if (a.x1 <= b.x1) dE_a[0] = -eh; else dE_b[0] = -eh;
    if (a.x2 >= b.x2) dE_a[2] = eh;  else dE_b[2] = eh;
    if (a.y1 <= b.y1) dE_a[1] = -ew; else dE_b[1] = -ew;
    if (a.y2 >= b.y2) dE_a[3] = ew;  else dE_b[3] = ew;

    // giou = I/U + U/E - 1
    const double inv_u2 = 1.0 / (uni * uni);
    const double inv_e2 = 1.0 / (enc * enc);
    for (int k = 0; k < 4; ++k) {
        const double dU_a = dA_a[k] - dI_a[k];
        const double dU_b = dA_b[k] - dI_b[k];
        g.da[k] = (dI_a[k] * uni - inter * dU_a) * inv_u2 +
                  (dU_a * enc - uni * dE_a[k]) * inv_e2;
        g.db[k] = (dI_b[k] * uni - inter * dU_b) * inv_u2 +
                  (dU_b * enc - uni * dE_b[k]) * inv_e2;
    }
    return g;
}

/// Chain rule from corner-format gradients back to center format.
inline BoxGrad corner_grad_to_center(const BoxGrad& g) {
    return {g[0] + g[2], g[1] + g[3], 0.5 * (g[2] - g[0]), 0.5 * (g[3] - g[1])};
}

/// giou gradient for center-format inputs (gradients in cx, cy, w, h order).
inline PairGrad giou_grad_center(const BoxCxCyWh& a, const BoxCxCyWh& b) {
    const PairGrad g = giou_grad(to_xyxy(a), to_xyxy(b));
    return {corner_grad_to_center(g.da), corner_grad_to_center(g.db)};
}

/// l1_box gradient; the subgradient at a tie is 0.
inline PairGrad l1_box_grad(const BoxCxCyWh& a, const BoxCxCyWh& b) {
    auto sgn = [](double d) { return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0); };
    PairGrad g;
    const double s0 = sgn(a.cx - b.cx);
    const double s1 = sgn(a.cy - b.cy);
    const double s2 = sgn(a.w - b.w);
    const double s3 = sgn(a.h - b.h);
    g.da = {s0, s1, s2, s3};
    g.db = {-s0, -s1, -s2, -s3};
    return g;
}

}  // namespace setdistill
