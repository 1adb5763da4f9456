from click.testing import CliRunner
from mock import patch
from pandas.testing import assert_frame_equal

from csskit import cli
from csskit.cases import CssType
from csskit.generate import make_random_model
from csskit.verify import evaluate_points, scan_points


def test_reproducibility(tmpdir):
    """Two scans of the same config and seed write byte-identical reports,
    whatever the number of worker threads"""

    runner = CliRunner()
    config = str(tmpdir.join('model.json'))
    result = runner.invoke(cli.main, ['random', '--type', '0.0', '--case', '1', '--seed', '3',
                                      '--out', config])
    assert result.exit_code == 0

    outputs = []
    for threads in ('1', '4', '4'):
        out = str(tmpdir.join('report-%d.json' % len(outputs)))
        with patch.dict('os.environ', {'CSSKIT_THREADS': threads}):
            result = runner.invoke(cli.main, ['scan', '--config', config, '--grid', '3',
                                              '--random', '20', '--seed', '5', '--out', out])
        assert result.exit_code == 0
        with open(out, 'rb') as f:
            outputs.append(f.read())
    assert outputs[0] == outputs[1] == outputs[2]


def test_point_order_does_not_change_values():
    model = make_random_model(CssType.T20, 1, seed=1)
    points = scan_points(model, 3)
    forward = evaluate_points(model, points, threads=1)
    # a fresh model has empty integral caches
    fresh = make_random_model(CssType.T20, 1, seed=1)
    backward = evaluate_points(fresh, points[::-1], threads=3)
    assert_frame_equal(forward, backward.iloc[::-1].reset_index(drop=True), check_exact=True)
