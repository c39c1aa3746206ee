#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace lumilink {

using Complex = std::complex<double>;

/// Complex baseband samples plus their mean energy, computed once on construction.
class IqFrame {
public:
    IqFrame() = default;
    explicit IqFrame(std::vector<Complex> samples) : samples_(std::move(samples)), avg_energy_(mean_energy(samples_)) {}

    std::span<const Complex> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    const Complex& operator[](std::size_t i) const { return samples_[i]; }
    double avg_energy() const noexcept { return avg_energy_; }

    /// Moves the sample buffer out; the frame is left empty.
    std::vector<Complex> release() && {
        avg_energy_ = 0.0;
        return std::move(samples_);
    }

    static double mean_energy(std::span<const Complex> s) noexcept {
        if (s.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& x : s) sum += std::norm(x);
        return sum / static_cast<double>(s.size());
    }

    friend bool operator==(const IqFrame& a, const IqFrame& b) { return a.samples_ == b.samples_; }

private:
    std::vector<Complex> samples_;
    double avg_energy_ = 0.0;
};

}  // namespace lumilink
