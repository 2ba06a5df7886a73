#include "nbicem/signal_model.hpp"

#include <cmath>
#include <stdexcept>

#include "nbicem/fft.hpp"
#include "nbicem/random.hpp"

namespace nbicem {

NbiTimeSamples NbiTimeSamples::none(const SystemConfig& cfg) {
  return {VecXc::Zero(cfg.cp_len), VecXc::Zero(cfg.n_subcarriers)};
}

OfdmFrame make_frame(const SystemConfig& cfg, VecXc freq_data,
                     const VecXc& prev_freq_data) {
  cfg.validate();
  const int n = cfg.n_subcarriers;
  const int v = cfg.cp_len;
  const int tail = cfg.channel_len - 1;
  if (freq_data.size() != n || prev_freq_data.size() != n)
    throw std::invalid_argument("make_frame: frequency data must have length N");

  UnitaryFft fft(n);
  OfdmFrame f;
  f.freq_data = std::move(freq_data);
  f.time_block = fft.idft(f.freq_data);
  f.cp = f.time_block.tail(v);
  f.prev_tail = tail > 0 ? VecXc(fft.idft(prev_freq_data).tail(tail))
                         : VecXc(0);
  return f;
}

OfdmFrame generate_frame(const SystemConfig& cfg, Rng& rng,
                         const Constellation& constellation) {
  const int n = cfg.n_subcarriers;
  VecXc data(n);
  for (int i = 0; i < n; ++i) data[i] = constellation.draw(rng);
  VecXc prev(n);
  for (int i = 0; i < n; ++i) prev[i] = constellation.draw(rng);
  return make_frame(cfg, std::move(data), prev);
}

ReceivedFrame apply_channel(const OfdmFrame& frame,
                            const ChannelRealization& channel,
                            const NbiTimeSamples& nbi, const SystemConfig& cfg,
                            Rng& rng) {
  cfg.validate();
  const int n = cfg.n_subcarriers;
  const int v = cfg.cp_len;
  const int l = cfg.channel_len;
  if (channel.taps.size() != l)
    throw std::invalid_argument("apply_channel: taps must have length channel_len");
  if (frame.time_block.size() != n || frame.cp.size() != v ||
      frame.prev_tail.size() != l - 1)
    throw std::invalid_argument("apply_channel: frame/config size mismatch");
  const bool has_nbi = nbi.cp.size() != 0 || nbi.block.size() != 0;
  if (has_nbi && (nbi.cp.size() != v || nbi.block.size() != n))
    throw std::invalid_argument("apply_channel: NBI samples must cover CP and block");

  // stream = [prev_tail | cp | block]; received sample t is the linear
  // convolution output at stream position (l-1) + t.
  const int stream_len = (l - 1) + v + n;
  VecXc stream(stream_len);
  stream.head(l - 1) = frame.prev_tail;
  stream.segment(l - 1, v) = frame.cp;
  stream.tail(n) = frame.time_block;

  VecXc conv = VecXc::Zero(v + n);
  for (int t = 0; t < v + n; ++t) {
    const int pos = (l - 1) + t;
    cxd acc(0.0, 0.0);
    for (int tap = 0; tap < l; ++tap) acc += channel.taps[tap] * stream[pos - tap];
    conv[t] = acc;
  }

  ReceivedFrame rx;
  rx.rx_cp = conv.head(v);
  rx.rx_block = conv.tail(n);
  if (has_nbi) {
    rx.rx_cp += nbi.cp;
    rx.rx_block += nbi.block;
  }
  if (cfg.noise_var > 0.0) {
    rx.rx_cp += complex_gaussian_vector(rng, v, cfg.noise_var);
    rx.rx_block += complex_gaussian_vector(rng, n, cfg.noise_var);
  }
  rx.freq_rx = UnitaryFft(n).dft(rx.rx_block);
  return rx;
}

std::pair<VecXc, VecXc> extract_ibi_free(const ReceivedFrame& rx,
                                         const SystemConfig& cfg) {
  const int g = cfg.ibi_free_len;
  if (rx.rx_cp.size() != cfg.cp_len || rx.rx_block.size() != cfg.n_subcarriers)
    throw std::invalid_argument("extract_ibi_free: frame/config size mismatch");
  return {rx.rx_cp.tail(g), rx.rx_block.tail(g)};
}

ChannelRealization vehicular_a_channel(Rng& rng, const SystemConfig& cfg,
                                       double sample_rate_hz) {
  if (sample_rate_hz <= 0.0)
    throw std::invalid_argument("vehicular_a_channel: sample rate must be positive");
  static constexpr double delays_ns[6] = {0.0, 310.0, 710.0, 1090.0, 1730.0, 2510.0};
  static constexpr double powers_db[6] = {0.0, -1.0, -9.0, -10.0, -15.0, -20.0};

  const int l = cfg.channel_len;
  VecXd power = VecXd::Zero(l);
  double total = 0.0;
  for (int i = 0; i < 6; ++i) {
    const int idx =
        static_cast<int>(std::lround(delays_ns[i] * 1e-9 * sample_rate_hz));
    if (idx > l - 1)
      throw std::invalid_argument(
          "vehicular_a_channel: delay spread exceeds channel_len-1 samples");
    const double p = std::pow(10.0, powers_db[i] / 10.0);
    power[idx] += p;  // delays that alias onto one sample pool their power
    total += p;
  }

  ChannelRealization ch;
  ch.taps = VecXc::Zero(l);
  for (int i = 0; i < l; ++i) {
    if (power[i] > 0.0) ch.taps[i] = complex_gaussian(rng, power[i] / total);
  }
  return ch;
}

VecXc channel_frequency_response(const ChannelRealization& channel,
                                 const SystemConfig& cfg) {
  const int n = cfg.n_subcarriers;
  VecXc padded = VecXc::Zero(n);
  padded.head(channel.taps.size()) = channel.taps;
  // Unnormalized DFT: sqrt(N) times the unitary transform.
  return UnitaryFft(n).dft(padded) * std::sqrt(static_cast<double>(n));
}

}  // namespace nbicem
