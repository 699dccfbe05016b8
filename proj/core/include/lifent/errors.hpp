#ifndef LIFENT_ERRORS_HPP
#define LIFENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lifent {

// Typed failure kinds. Construction/validation failures are data errors;
// the rest are raised by individual operations as documented at each site.
enum class errc {
    length_mismatch,
    non_positive_prob,
    sum_not_one,
    unsorted_support,
    non_positive_support,
    invalid_r,
    support_mismatch,
    residual_at_terminal,
    bad_time_index,
    value_outside_support,
    bad_counts,
    empty_tail,
    empty_head,
    zero_cell_in_range,
    missing_q,
    negative_variance,
    zero_variance,
    too_few_draws,
    all_replications_skipped,
    bad_grid,
    bad_study,
    parse_error,
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(errc code) noexcept;

} // namespace lifent

#endif
