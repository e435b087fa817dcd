#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "cartweno/grid.hpp"
#include "cartweno/rk.hpp"

namespace cartweno {

/// Grayscale schlieren image: 255 * (1 - |grad rho| / max |grad rho|) with
/// central differences (one-sided at the domain edge). Row 0 is y_max.
/// Returns nx * ny pixels in row-major order.
std::vector<unsigned char> schlieren_pixels(const CellField& field);

/// Writes schlieren_pixels as a binary P5 PGM of size nx x ny.
void emit_schlieren(const CellField& field, const std::filesystem::path& path);

/// Points on |R(z)| = 1 found by radial bisection from the origin along
/// `angles` equally spaced rays (first crossing of |R| > 1 on each ray).
std::vector<std::complex<double>> stability_boundary(const ButcherTableau& tableau,
                                                     int angles = 720, double tol = 1e-10);

/// CSV "re,im" of stability_boundary.
void emit_stability_region(const ButcherTableau& tableau, const std::filesystem::path& path);

/// CSV "x,y,rho,u,v,p" per interior cell.
void emit_field_csv(const CellField& field, const std::filesystem::path& path, double gamma);

/// Writes `text` to `path`, creating parent directories. Throws Error on
/// I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cartweno
