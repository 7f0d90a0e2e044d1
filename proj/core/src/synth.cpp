#include "amc/synth.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace amc {

SynthInstance make_planted_instance(const SynthOptions& options) {
  if (options.height == 0 || options.width == 0) {
    throw std::invalid_argument("synthetic grid must be non-empty");
  }
  if (options.regions == 0) throw std::invalid_argument("need at least one region");
  if (options.noise < 0.0 || options.margin < 0.0) {
    throw std::invalid_argument("noise and margin must be non-negative");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::pair<double, double>> seeds(options.regions);
  for (auto& [r, c] : seeds) {
    r = unit(rng) * static_cast<double>(options.height);
    c = unit(rng) * static_cast<double>(options.width);
  }
  Partition regions(options.height * options.width);
  for (std::size_t r = 0; r < options.height; ++r) {
    for (std::size_t c = 0; c < options.width; ++c) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t owner = 0;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const double dr = static_cast<double>(r) + 0.5 - seeds[s].first;
        const double dc = static_cast<double>(c) + 0.5 - seeds[s].second;
        const double d = dr * dr + dc * dc;
        if (d < best) {
          best = d;
          owner = static_cast<std::uint32_t>(s);
        }
      }
      regions[r * options.width + c] = owner;
    }
  }

  const EdgeMap blank(options.height, options.width,
                      std::vector<double>(options.height * options.width, 0.0));
  const EdgeGraph topology = build_grid_graph(blank, options.grid);

  SynthInstance instance;
  instance.truth = labeling_from_partition(topology, regions);
  std::uniform_real_distribution<double> jitter(-options.noise, options.noise);
  std::vector<double> probs(topology.num_edges());
  for (EdgeId e = 0; e < probs.size(); ++e) {
    const double centre = 0.5 + (instance.truth[e] != 0 ? options.margin : -options.margin);
    probs[e] = std::clamp(centre + jitter(rng), 0.0, 1.0);
  }
  instance.graph = topology.with_probs(std::move(probs));
  instance.truth_partition = partition_from_labeling(instance.graph, instance.truth);
  return instance;
}

}  // namespace amc
