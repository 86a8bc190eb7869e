#include "kerr/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace kerr {

namespace {

struct Rgb {
    std::uint8_t r, g, b;
};

struct Canvas {
    int w, h;
    std::vector<Rgb> px;
    Canvas(int width, int height) : w(width), h(height), px(static_cast<std::size_t>(w) * h, Rgb{255, 255, 255}) {}
    void set(int x, int y, Rgb c) {
        if (x >= 0 && x < w && y >= 0 && y < h) px[static_cast<std::size_t>(y) * w + x] = c;
    }
};

Rgb diverging(double t) {  // t in [-1, 1], 0 -> white
    t = std::clamp(t, -1.0, 1.0);
    const auto lerp = [](double a, double b, double f) {
        return static_cast<std::uint8_t>(std::lround(a + (b - a) * f));
    };
    if (t < 0.0) {
        const double f = -t;
        return {lerp(255, 20, f), lerp(255, 60, f), lerp(255, 200, f)};
    }
    const double f = t;
    return {lerp(255, 200, f), lerp(255, 30, f), lerp(255, 30, f)};
}

// 5x7 glyphs for numeric labels
constexpr int kGlyphW = 5, kGlyphH = 7;
const char* glyph_rows(char ch) {
    switch (ch) {
        case '0': return "01110100011001110101110011000101110";
        case '1': return "00100011000010000100001000010001110";
        case '2': return "01110100010000100110010001000011111";
        case '3': return "01110100010000101110000011000101110";
        case '4': return "00010001100101010010111110001000010";
        case '5': return "11111100001111000001000011000101110";
        case '6': return "01110100001000011110100011000101110";
        case '7': return "11111000010001000100010001000010000";
        case '8': return "01110100011000101110100011000101110";
        case '9': return "01110100011000101111000010000101110";
        case '-': return "00000000000000011111000000000000000";
        case '.': return "00000000000000000000000000110001100";
        default: return nullptr;
    }
}

void draw_text(Canvas& c, int x, int y, const std::string& text, Rgb color) {
    for (char ch : text) {
        const char* rows = glyph_rows(ch);
        if (rows) {
            for (int j = 0; j < kGlyphH; ++j)
                for (int i = 0; i < kGlyphW; ++i)
                    if (rows[j * kGlyphW + i] == '1') c.set(x + i, y + j, color);
        }
        x += kGlyphW + 1;
    }
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

void render_heatmap(const Field& field, const std::filesystem::path& path,
                    const RenderOptions& options) {
    const Grid2D& g = field.grid;
    int cell = options.cell_px;
    if (cell <= 0) cell = std::max(1, 640 / g.n_q);
    const int plot_w = g.n_q * cell;
    const int plot_h = g.n_p * cell;
    const int margin_l = 52, margin_b = 22, margin_t = 8, margin_r = 10;
    Canvas canvas(margin_l + plot_w + margin_r, margin_t + plot_h + margin_b);

    double vmax = 0.0;
    for (double v : field.values) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;

    const Rgb black{0, 0, 0};
    for (int row = 0; row < g.n_p; ++row) {
        for (int col = 0; col < g.n_q; ++col) {
            Rgb c = diverging(field.at(row, col) / vmax);
            if (options.zero_contours) {
                // mark cells whose corner samples straddle zero
                const double v = field.at(row, col);
                const bool flip =
                    (col + 1 < g.n_q && (field.at(row, col + 1) < 0.0) != (v < 0.0)) ||
                    (row + 1 < g.n_p && (field.at(row + 1, col) < 0.0) != (v < 0.0));
                if (flip) c = black;
            }
            for (int dy = 0; dy < cell; ++dy)
                for (int dx = 0; dx < cell; ++dx)
                    canvas.set(margin_l + col * cell + dx, margin_t + row * cell + dy, c);
        }
    }

    // frame
    for (int x = -1; x <= plot_w; ++x) {
        canvas.set(margin_l + x, margin_t - 1, black);
        canvas.set(margin_l + x, margin_t + plot_h, black);
    }
    for (int y = -1; y <= plot_h; ++y) {
        canvas.set(margin_l - 1, margin_t + y, black);
        canvas.set(margin_l + plot_w, margin_t + y, black);
    }

    // ticks + extent labels
    const int n_ticks = 5;
    for (int k = 0; k < n_ticks; ++k) {
        const double fq = static_cast<double>(k) / (n_ticks - 1);
        const int x = margin_l + static_cast<int>(fq * (plot_w - 1));
        for (int d = 1; d <= 4; ++d) canvas.set(x, margin_t + plot_h + d, black);
        const std::string lq = short_number(g.q_min + fq * (g.q_max - g.q_min));
        draw_text(canvas, x - static_cast<int>(lq.size()) * 3, margin_t + plot_h + 7, lq, black);

        const double fp = static_cast<double>(k) / (n_ticks - 1);
        const int y = margin_t + static_cast<int>(fp * (plot_h - 1));
        for (int d = 1; d <= 4; ++d) canvas.set(margin_l - 1 - d, y, black);
        const std::string lp = short_number(g.p_max - fp * (g.p_max - g.p_min));
        draw_text(canvas, margin_l - 8 - static_cast<int>(lp.size()) * (kGlyphW + 1), y - 3, lp, black);
    }

    if (options.hbar_square) {
        // outline of a square with phase-space area 1 (hbar), upper-left corner
        const Rgb gray{120, 120, 120};
        const int side_q = std::max(1, static_cast<int>(std::lround(cell / g.dq())));
        const int side_p = std::max(1, static_cast<int>(std::lround(cell / g.dp())));
        const int x0 = margin_l + 2 * cell;
        const int y0 = margin_t + 2 * cell;
        for (int x = 0; x <= side_q; ++x) {
            canvas.set(x0 + x, y0, gray);
            canvas.set(x0 + x, y0 + side_p, gray);
        }
        for (int y = 0; y <= side_p; ++y) {
            canvas.set(x0, y0 + y, gray);
            canvas.set(x0 + side_q, y0 + y, gray);
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "P6\n" << canvas.w << " " << canvas.h << "\n255\n";
    out.write(reinterpret_cast<const char*>(canvas.px.data()),
              static_cast<std::streamsize>(canvas.px.size() * 3));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace kerr
