"""
Jeffrey-like updating of a possibility distribution
===================================================

The prior is revised by an uncertain observation, itself a possibility
distribution.  The compact formula and the sup over level cuts coincide.
Three special cases follow: a weaker observation leaves the prior alone,
overlapping cores give the pointwise minimum, and a crisp observation with
residual doubt lambda has a closed form.
"""

from beliefupdate import (
    Frame,
    PossibilityDistribution,
    poss_combine,
    poss_jeffrey_update,
    poss_jeffrey_update_sup,
    poss_update_crisp_with_doubt,
)

frame = Frame(("sunny", "cloudy", "rain", "storm"))
prior = PossibilityDistribution.from_mapping(frame, {"sunny": 1.0, "cloudy": 0.7, "rain": 0.4, "storm": 0.1})


def show(title, d):
    print(f"{title:<34}" + "  ".join(f"{k}={v:.2f}" for k, v in d.as_dict().items()))


show("prior", prior)
obs = PossibilityDistribution.from_mapping(frame, {"sunny": 0.2, "cloudy": 0.5, "rain": 1.0, "storm": 1.0})
show("observation", obs)
show("Jeffrey-like, min", poss_jeffrey_update(prior, obs))
show("Jeffrey-like, product", poss_jeffrey_update(prior, obs, "product"))
show("sup over level cuts", poss_jeffrey_update_sup(prior, obs))
show("symmetric combination (min)", poss_combine(prior, obs))

weaker = PossibilityDistribution.from_mapping(frame, {"sunny": 1.0, "cloudy": 0.9, "rain": 0.8, "storm": 0.5})
show("weaker observation -> prior", poss_jeffrey_update(prior, weaker))

rainy = frame.subset(["rain", "storm"])
for lam in (0.0, 0.3, 0.6, 1.0):
    show(f"'rain or storm', doubt {lam}", poss_update_crisp_with_doubt(prior, rainy, lam))
