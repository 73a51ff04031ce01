#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace figforge {

// All geometry is stored in EMU (English Metric Units), the OpenXML
// coordinate unit. 914400 EMU per inch, 360000 per cm, 12700 per point.
using Emu = std::int64_t;

inline constexpr Emu kEmuPerInch = 914400;
inline constexpr Emu kEmuPerCm = 360000;
inline constexpr Emu kEmuPerPoint = 12700;

// OpenXML default 16:9 slide, 13.333 x 7.5 in.
inline constexpr Emu kDefaultCanvasWidth = 12192000;
inline constexpr Emu kDefaultCanvasHeight = 6858000;

// Half-up rounding of a non-negative-or-negative decimal scaled value.
// Inputs come from JSON doubles; for decimals with <= 4 fractional digits
// the double is close enough that llround lands on the exactly rounded EMU.
inline Emu emu_from_inches(double in) { return std::llround(in * static_cast<double>(kEmuPerInch)); }
inline Emu emu_from_cm(double cm) { return std::llround(cm * static_cast<double>(kEmuPerCm)); }
inline Emu emu_from_points(double pt) { return std::llround(pt * static_cast<double>(kEmuPerPoint)); }

inline double inches_from_emu(Emu e) { return static_cast<double>(e) / static_cast<double>(kEmuPerInch); }
inline double points_from_emu(Emu e) { return static_cast<double>(e) / static_cast<double>(kEmuPerPoint); }

// Alpha is quantized to per-cent-thousandths (the OpenXML fill alpha unit)
// at construction time so archive round trips are exact.
inline int alpha_pct_thousandths(double alpha) { return static_cast<int>(std::llround(alpha * 100000.0)); }
inline double alpha_from_pct_thousandths(int v) { return static_cast<double>(v) / 100000.0; }

struct EmuPoint {
  Emu x = 0;
  Emu y = 0;
  bool operator==(const EmuPoint&) const = default;
};

struct EmuRect {
  Emu x = 0;
  Emu y = 0;
  Emu w = 0;
  Emu h = 0;
  Emu right() const { return x + w; }
  Emu bottom() const { return y + h; }
  bool operator==(const EmuRect&) const = default;
};

}  // namespace figforge
