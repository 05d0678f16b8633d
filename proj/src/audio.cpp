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

#include "hdaccess/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hdaccess::audio
{

  namespace
  {
    constexpr size_t wav_header_size = 44;

    void put16(std::vector<uint8_t>& out, uint16_t v)
    {
      out.push_back(uint8_t(v));
      out.push_back(uint8_t(v >> 8));
    }

    void put32(std::vector<uint8_t>& out, uint32_t v)
    {
      for (int i = 0; i < 4; ++i)
        out.push_back(uint8_t(v >> (8 * i)));
    }

    uint32_t get32(std::span<const uint8_t> b, size_t at)
    {
      return uint32_t(b[at]) | uint32_t(b[at + 1]) << 8 | uint32_t(b[at + 2]) << 16
        | uint32_t(b[at + 3]) << 24;
    }

    uint16_t get16(std::span<const uint8_t> b, size_t at)
    {
      return uint16_t(b[at] | b[at + 1] << 8);
    }
  }

  double divider_frequency(uint8_t divider)
  {
    return divider == 0 ? 0.0 : beep_base_hz / divider;
  }

  size_t sample_index(double ms)
  {
    return size_t(std::llround(ms * samples_per_ms));
  }

  PcmBuffer timeline_to_pcm(const hda::BeepTimeline& timeline, double end_ms,
                            const RenderConfig& config)
  {
    if (!(config.amplitude > 0 && config.amplitude <= 1))
      throw std::invalid_argument("amplitude must be in (0, 1]");
    if (end_ms < 0 || (!timeline.empty() && end_ms < timeline.back().t_ms))
      throw std::invalid_argument("end_ms precedes the last timeline entry");

    const auto level = int16_t(std::lround(config.amplitude * 32767));
    PcmBuffer pcm;
    pcm.samples.assign(sample_index(end_ms), 0);

    for (size_t i = 0; i < timeline.size(); ++i)
      {
        unsigned divider = timeline[i].divider;
        if (divider == 0)
          continue;
        size_t begin = sample_index(timeline[i].t_ms);
        size_t end = i + 1 < timeline.size() ? sample_index(timeline[i + 1].t_ms) : pcm.samples.size();
        end = std::min(end, pcm.samples.size());

        // 12 kHz / d at 48 kHz is a period of exactly 4d samples.
        size_t half_period = 2 * size_t(divider);
        for (size_t s = begin; s < end; ++s)
          pcm.samples[s] = ((s - begin) / half_period) % 2 == 0 ? level : int16_t(-level);
      }
    return pcm;
  }

  hda::BeepTimeline slice_timeline(const hda::BeepTimeline& timeline, double from_ms, double to_ms)
  {
    hda::BeepTimeline out;
    uint8_t in_force = 0;
    bool have_in_force = false;
    for (const auto& e : timeline)
      {
        if (e.t_ms <= from_ms)
          {
            in_force = e.divider;
            have_in_force = true;
            continue;
          }
        if (e.t_ms > to_ms)
          break;
        if (out.empty() && have_in_force)
          out.push_back({0, in_force});
        out.push_back({e.t_ms - from_ms, e.divider});
      }
    if (out.empty() && have_in_force)
      out.push_back({0, in_force});
    return out;
  }

  std::vector<uint8_t> write_wav(const PcmBuffer& pcm)
  {
    const uint32_t data_bytes = uint32_t(pcm.samples.size() * 2);
    std::vector<uint8_t> out;
    out.reserve(wav_header_size + data_bytes);

    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put32(out, 36 + data_bytes);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put32(out, 16);                 // fmt chunk size
    put16(out, 1);                  // PCM
    put16(out, 1);                  // mono
    put32(out, sample_rate);
    put32(out, sample_rate * 2);    // byte rate
    put16(out, 2);                  // block align
    put16(out, 16);                 // bits per sample
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put32(out, data_bytes);

    for (int16_t s : pcm.samples)
      put16(out, uint16_t(s));
    return out;
  }

  PcmBuffer read_wav(std::span<const uint8_t> b)
  {
    if (b.size() < wav_header_size || std::memcmp(b.data(), "RIFF", 4) != 0
        || std::memcmp(b.data() + 8, "WAVEfmt ", 8) != 0
        || std::memcmp(b.data() + 36, "data", 4) != 0)
      throw std::invalid_argument("not a canonical WAV file");
    if (get16(b, 20) != 1 || get16(b, 22) != 1 || get32(b, 24) != sample_rate
        || get16(b, 34) != 16)
      throw std::invalid_argument("WAV is not 48 kHz 16-bit mono PCM");
    uint32_t data_bytes = get32(b, 40);
    if (data_bytes % 2 != 0 || b.size() != wav_header_size + data_bytes)
      throw std::invalid_argument("WAV data size mismatch");

    PcmBuffer pcm;
    pcm.samples.resize(data_bytes / 2);
    for (size_t i = 0; i < pcm.samples.size(); ++i)
      pcm.samples[i] = int16_t(get16(b, wav_header_size + 2 * i));
    return pcm;
  }

  double measure_frequency(const PcmBuffer& pcm, double window_ms, double start_ms)
  {
    if (!(window_ms > 0) || start_ms < 0)
      throw std::invalid_argument("window must be positive");
    size_t begin = sample_index(start_ms);
    size_t end = sample_index(start_ms + window_ms);
    if (end > pcm.samples.size())
      throw std::invalid_argument("window longer than buffer");
    if (end == begin)
      throw std::invalid_argument("window shorter than one sample");

    // A crossing is a sign change between nonzero samples; zero runs
    // carry the previous sign.
    unsigned crossings = 0;
    int last_sign = 0;
    for (size_t i = begin; i < end; ++i)
      {
        int16_t s = pcm.samples[i];
        int sign = (s > 0) - (s < 0);
        if (sign == 0)
          continue;
        if (last_sign != 0 && sign != last_sign)
          ++crossings;
        last_sign = sign;
      }
    return (crossings / 2.0) / ((end - begin) / double(sample_rate));
  }

}
