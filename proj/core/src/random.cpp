#include "heightlat/random.hpp"

namespace heightlat {

double RandomSource::uniform(std::int64_t epoch, SiteKey key) const noexcept {
  // Top bit from the coin stream, the remaining 52 bits from an independent
  // derivation so that the sampler never needs to compute them.
  const double top = coin(epoch, key) ? 0.5 : 0.0;
  std::uint64_t low = mix64(epoch_key(epoch, key.klass) ^ 0xd1b54a32d192ed03ULL ^
                            (kGamma * (static_cast<std::uint64_t>(key.rank) + 1)));
  return top + static_cast<double>(low >> 12) * 0x1.0p-53;
}

}  // namespace heightlat
