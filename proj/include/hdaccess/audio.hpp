// Copyright 2026 The hdaccess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hdaccess/codec.hpp"

namespace hdaccess::audio
{

  inline constexpr unsigned sample_rate = 48000;
  inline constexpr unsigned samples_per_ms = sample_rate / 1000;

  /// Beep generator clock: a divider d produces beep_base_hz / d.
  inline constexpr double beep_base_hz = 12000.0;

  /// 48 kHz signed 16-bit mono.
  struct PcmBuffer
  {
    std::vector<int16_t> samples;

    double duration_ms() const
    { return double(samples.size()) / samples_per_ms; }

    bool operator==(const PcmBuffer&) const = default;
  };

  struct RenderConfig
  {
    /// Fraction of full scale, 0 < amplitude <= 1.
    double amplitude = 0.5;
  };

  /// Frequency a beep divider produces; 0 for a silent divider.
  double divider_frequency(uint8_t divider);

  /// Sample index of a timestamp: round(ms * 48).
  size_t sample_index(double ms);

  /// Render a divider timeline as a square wave, restarting the phase at
  /// each entry. Silence before the first entry and wherever the divider
  /// is zero. Output holds sample_index(end_ms) samples. Throws
  /// std::invalid_argument if end_ms precedes the last entry or the
  /// amplitude is out of range.
  PcmBuffer timeline_to_pcm(const hda::BeepTimeline& timeline, double end_ms,
                            const RenderConfig& config = {});

  /// The part of `timeline` between from_ms and to_ms, shifted so that
  /// from_ms becomes 0. The divider in force at from_ms opens the slice.
  hda::BeepTimeline slice_timeline(const hda::BeepTimeline& timeline, double from_ms, double to_ms);

  /// 44-byte RIFF/WAVE header followed by little-endian samples.
  std::vector<uint8_t> write_wav(const PcmBuffer& pcm);

  /// Inverse of write_wav for the exact format it produces. Throws
  /// std::invalid_argument on anything else.
  PcmBuffer read_wav(std::span<const uint8_t> bytes);

  /// Zero crossings in [start_ms, start_ms + window_ms) divided by two,
  /// per second. Throws std::invalid_argument for a window under one
  /// sample or one that runs past the end of the buffer.
  double measure_frequency(const PcmBuffer& pcm, double window_ms, double start_ms = 0);

}
