#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mqkit/amm_v2.hpp"
#include "mqkit/amm_v3.hpp"
#include "mqkit/domain.hpp"
#include "mqkit/lob.hpp"

namespace mq::arb {

struct triplet_error : domain_error {
    using domain_error::domain_error;
};

// Closed cycle X->Y->Z->X: the quote of each leg is the base of the next.
class Triplet {
public:
    explicit Triplet(std::array<Pair, 3> legs);
    static Triplet of(const std::string& x, const std::string& y, const std::string& z,
                      std::string_view native_symbol = "ETH");

    const std::array<Pair, 3>& legs() const { return legs_; }
    std::string name() const;

private:
    std::array<Pair, 3> legs_;
};

struct QuotePoint {
    HourStamp stamp;
    double p_xy;
    double p_yz;
    double p_zx;
};

enum class PriceSource { lob_mid, v2_reserve_ratio, v3_quoted, supplied };

struct TripletQuoteSeries {
    TripletQuoteSeries(Triplet triplet, std::string exchange, std::vector<QuotePoint> points);

    Triplet triplet;
    std::string exchange;
    std::vector<QuotePoint> points;
};

struct DeviationPoint {
    HourStamp stamp;
    double theta;
};

struct DeviationSeries {
    std::string label;
    PriceSource source = PriceSource::supplied;
    std::vector<DeviationPoint> points;
};

// P_XY * P_YZ * P_ZX - 1
double theta(Price p_xy, Price p_yz, Price p_zx);

// Quote series built from per-hour market states. A leg listed in the
// opposite orientation is inverted; hours missing any leg are dropped.
TripletQuoteSeries quotes_from_books(const Triplet& triplet, std::string exchange,
                                     std::span<const lob::LobSnapshot> books);
TripletQuoteSeries quotes_from_pools(const Triplet& triplet, std::string exchange,
                                     std::span<const std::pair<HourStamp, v2::PoolState>> pools);
TripletQuoteSeries quotes_from_pools(const Triplet& triplet, std::string exchange,
                                     std::span<const std::pair<HourStamp, v3::PoolState>> pools);

DeviationSeries deviation_series(const TripletQuoteSeries& src,
                                 PriceSource source = PriceSource::supplied);

struct CombinedPoint {
    HourStamp stamp;
    double theta;
    std::string winner;  // label of the series that supplied the value
};

// Per stamp in the union of all stamps, the value with the smallest |theta|
// among the series quoting it. Ties go to the earlier series.
std::vector<CombinedPoint> min_abs_combine(std::span<const DeviationSeries> series);

struct BandPoint {
    HourStamp stamp;
    std::optional<double> top_decile;  // empty until the window holds 10 points
};

inline constexpr std::size_t min_band_points = 10;

// Nearest-rank 90th percentile of |theta| over the trailing window
// (stamp - window_hours, stamp].
std::vector<BandPoint> rolling_top_decile(std::span<const DeviationPoint> series,
                                          std::int64_t window_hours = 168);

// Nearest-rank quantile of a non-empty sample: the ceil(q * n)-th smallest value.
double nearest_rank(std::vector<double> values, double q);

}  // namespace mq::arb
