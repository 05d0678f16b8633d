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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hdaccess/audio.hpp"

using namespace hdaccess;
using namespace hdaccess::audio;
using hda::BeepTimeline;

namespace
{
  // Independent frequency estimate: count rising edges (negative to
  // positive sample transitions) over the buffer.
  double rising_edge_hz(const PcmBuffer& pcm)
  {
    unsigned edges = 0;
    for (size_t i = 1; i < pcm.samples.size(); ++i)
      edges += pcm.samples[i - 1] < 0 && pcm.samples[i] > 0;
    return edges / (pcm.samples.size() / double(sample_rate));
  }
}

TEST_CASE("divider frequency")
{
  CHECK(divider_frequency(0) == 0.0);
  CHECK(divider_frequency(1) == 12000.0);
  CHECK(divider_frequency(100) == 120.0);
  CHECK(divider_frequency(255) == doctest::Approx(47.0588).epsilon(1e-4));
}

TEST_CASE("sample index rounds to the nearest frame")
{
  CHECK(sample_index(0) == 0u);
  CHECK(sample_index(1000) == 48000u);
  CHECK(sample_index(0.01) == 0u);
  CHECK(sample_index(0.011) == 1u);
}

TEST_CASE("square wave shape")
{
  PcmBuffer pcm = timeline_to_pcm({{0, 1}}, 1, {1.0});
  REQUIRE(pcm.samples.size() == 48);
  // Divider 1: period 4 samples, two high then two low.
  CHECK(pcm.samples[0] == 32767);
  CHECK(pcm.samples[1] == 32767);
  CHECK(pcm.samples[2] == -32767);
  CHECK(pcm.samples[3] == -32767);
  CHECK(pcm.samples[4] == 32767);
}

TEST_CASE("silence before the first entry and for divider zero")
{
  PcmBuffer pcm = timeline_to_pcm({{1, 10}, {2, 0}}, 3);
  REQUIRE(pcm.samples.size() == 144);
  for (size_t i = 0; i < 48; ++i)
    CHECK(pcm.samples[i] == 0);
  CHECK(pcm.samples[48] != 0);
  for (size_t i = 96; i < 144; ++i)
    CHECK(pcm.samples[i] == 0);
}

TEST_CASE("phase restarts at each entry")
{
  PcmBuffer pcm = timeline_to_pcm({{0, 3}, {0.125, 3}}, 1);
  // 0.125 ms = 6 samples: without the restart sample 6 would start the
  // low half of a 12 sample period.
  CHECK(pcm.samples[5] > 0);
  CHECK(pcm.samples[6] > 0);
  CHECK(pcm.samples[12] < 0);
}

TEST_CASE("render argument checks")
{
  CHECK_THROWS_AS(timeline_to_pcm({{5, 1}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(timeline_to_pcm({}, 1, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(timeline_to_pcm({}, 1, {1.5}), std::invalid_argument);
  CHECK(timeline_to_pcm({}, 0).samples.empty());
}

TEST_CASE("every divider measures within 1 Hz, checked by two estimators")
{
  for (unsigned d = 1; d <= 255; ++d)
    {
      CAPTURE(d);
      PcmBuffer pcm = timeline_to_pcm({{0, uint8_t(d)}}, 1000);
      double expect = 12000.0 / d;
      CHECK(std::abs(measure_frequency(pcm, 1000) - expect) <= 1.0);
      CHECK(std::abs(rising_edge_hz(pcm) - expect) <= 1.0);
    }
}

TEST_CASE("measure_frequency window checks")
{
  PcmBuffer pcm = timeline_to_pcm({{0, 10}}, 100);
  CHECK(measure_frequency(pcm, 50, 50) == doctest::Approx(1200).epsilon(0.01));
  CHECK_THROWS_AS(measure_frequency(pcm, 0), std::invalid_argument);
  CHECK_THROWS_AS(measure_frequency(pcm, 0.001), std::invalid_argument);
  CHECK_THROWS_AS(measure_frequency(pcm, 101), std::invalid_argument);
  CHECK_THROWS_AS(measure_frequency(pcm, 10, -1), std::invalid_argument);
}

TEST_CASE("slice keeps the divider in force at the cut")
{
  BeepTimeline tl{{0, 5}, {10, 6}, {20, 0}, {30, 7}};
  CHECK(slice_timeline(tl, 15, 25) == BeepTimeline{{0, 6}, {5, 0}});
  CHECK(slice_timeline(tl, 10, 20) == BeepTimeline{{0, 6}, {10, 0}});
  CHECK(slice_timeline(tl, 31, 40) == BeepTimeline{{0, 7}});
  CHECK(slice_timeline({{5, 1}}, 0, 10) == BeepTimeline{{5, 1}});
  CHECK(slice_timeline({}, 0, 10).empty());
}

TEST_CASE("wav layout")
{
  PcmBuffer pcm = timeline_to_pcm({{0, 100}}, 1000);
  auto wav = write_wav(pcm);
  CHECK(wav.size() == 96044u);
  CHECK(std::string(wav.begin(), wav.begin() + 4) == "RIFF");
  CHECK(wav[4] + (wav[5] << 8) + (wav[6] << 16) == 96036);
  CHECK(std::string(wav.begin() + 8, wav.begin() + 16) == "WAVEfmt ");
  CHECK(wav[24] + (wav[25] << 8) == 48000 % 65536);
  CHECK(std::string(wav.begin() + 36, wav.begin() + 40) == "data");
  CHECK(read_wav(wav) == pcm);
}

TEST_CASE("read_wav rejects other formats")
{
  auto wav = write_wav(timeline_to_pcm({{0, 1}}, 1));
  auto truncated = wav;
  truncated.pop_back();
  CHECK_THROWS_AS(read_wav(truncated), std::invalid_argument);
  auto stereo = wav;
  stereo[22] = 2;
  CHECK_THROWS_AS(read_wav(stereo), std::invalid_argument);
  CHECK_THROWS_AS(read_wav(std::vector<uint8_t>(10)), std::invalid_argument);
}
