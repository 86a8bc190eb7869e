#pragma once

#include <filesystem>

#include "kerr/phase_space.hpp"

namespace kerr {

struct RenderOptions {
    int cell_px = 0;           // pixels per grid cell; 0 = pick for ~640 px width
    bool hbar_square = false;  // outline a reference square of area hbar = 1
    bool zero_contours = false;  // overlay sign-change cells in black (caustic maps)
};

/// Renders a real field as a binary PPM (P6) heatmap with a symmetric
/// diverging color scale centered at 0 (negative values blue, positive red)
/// and tick-labeled axes showing the grid extents.
void render_heatmap(const Field& field, const std::filesystem::path& path,
                    const RenderOptions& options = {});

}  // namespace kerr
