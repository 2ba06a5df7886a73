#pragma once

#include <utility>

#include "nbicem/constellation.hpp"
#include "nbicem/system_config.hpp"
#include "nbicem/types.hpp"

namespace nbicem {

/// One transmitted CP-OFDM block plus the tail of the block before it.
struct OfdmFrame {
  VecXc freq_data;   // N constellation symbols
  VecXc time_block;  // unitary IDFT of freq_data, length N
  VecXc cp;          // last V samples of time_block
  VecXc prev_tail;   // last L-1 time samples of the preceding block
};

struct ChannelRealization {
  VecXc taps;  // length L impulse response, mostly zero between path delays
};

/// Time-domain narrowband-interference samples aligned with one frame.
/// `cp` covers the V prefix samples, `block` the N block samples; both come
/// from the same underlying tones, one block length apart.
struct NbiTimeSamples {
  VecXc cp;     // length V (empty means no interference)
  VecXc block;  // length N

  static NbiTimeSamples none(const SystemConfig& cfg);
};

struct ReceivedFrame {
  VecXc rx_cp;     // V received prefix samples (first L-1 carry IBI)
  VecXc rx_block;  // N received block samples
  VecXc freq_rx;   // unitary DFT of rx_block
};

/// Random frame: N i.i.d. symbols from the constellation, its IDFT, the CP
/// copy, and an independently drawn previous-block tail.
OfdmFrame generate_frame(const SystemConfig& cfg, Rng& rng,
                         const Constellation& constellation);

/// Deterministic core of generate_frame: everything derived from given
/// frequency-domain data and previous-block frequency data.
OfdmFrame make_frame(const SystemConfig& cfg, VecXc freq_data,
                     const VecXc& prev_freq_data);

/// Linear convolution of [prev_tail | cp | block] with the channel taps,
/// additive NBI, and AWGN of variance cfg.noise_var per complex sample
/// (skipped exactly when noise_var == 0). The CP output keeps the previous
/// block's smear in its first L-1 samples; the block output is cyclic in the
/// transmitted block because the CP replays its tail.
ReceivedFrame apply_channel(const OfdmFrame& frame,
                            const ChannelRealization& channel,
                            const NbiTimeSamples& nbi, const SystemConfig& cfg,
                            Rng& rng);

/// (p, p_x): the last G = V - L + 1 received CP samples and the last G
/// received block samples. With no noise and no NBI the two are equal.
std::pair<VecXc, VecXc> extract_ibi_free(const ReceivedFrame& rx,
                                         const SystemConfig& cfg);

/// ITU-R Vehicular-A power-delay profile: six Rayleigh taps at
/// {0, 310, 710, 1090, 1730, 2510} ns with powers {0, -1, -9, -10, -15, -20}
/// dB, delays rounded to the nearest sample at sample_rate_hz, expected total
/// power normalized to 1. Throws if the largest delay exceeds channel_len-1
/// samples.
ChannelRealization vehicular_a_channel(Rng& rng, const SystemConfig& cfg,
                                       double sample_rate_hz);

/// Frequency response seen by the cyclic block: unnormalized N-point DFT of
/// the zero-padded taps, so freq_rx = response .* freq_data (+ NBI + noise).
VecXc channel_frequency_response(const ChannelRealization& channel,
                                 const SystemConfig& cfg);

}  // namespace nbicem
