import pytest

from rootstream import MODES, GeneratorConfig, Plan, Profile, new_generator


@pytest.fixture
def make_gen():
    """Generator factory taking the CLI's string vocabulary."""

    def make(
        seed=0,
        n_streams=1,
        mode="full",
        plan="shared",
        profile="paper",
        batch_size=4096,
    ):
        config = GeneratorConfig(
            seed=seed,
            n_streams=n_streams,
            mode=MODES[mode],
            profile=Profile(profile),
            plan=Plan(plan),
            batch_size=batch_size,
        )
        return new_generator(config)

    return make
