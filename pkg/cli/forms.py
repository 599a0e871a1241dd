"""
Option validation for the physics commands.

Each command's parsed options are bound to one of these forms; a form
that does not validate becomes a usage error with exit status 2.
"""
import os

from django import forms
from django.core.exceptions import ValidationError

from blackhole.horizon import BlackHoleConfig
from coherent_thermo.exceptions import DomainError
from constants.units import CONSTANT_NAMES, ConstantsSet, UnitSystem
from kgf_field.source import SourceProfile

UNIT_CHOICES = [(unit.value, unit.value) for unit in UnitSystem]


def validate_positive(value):
    if value is not None and not value > 0:
        raise ValidationError('Must be positive, got %(value)r.', params={'value': value})


def validate_non_negative(value):
    if value is not None and not value >= 0:
        raise ValidationError('Must be zero or positive, got %(value)r.', params={'value': value})


class ConstantOverridesField(forms.Field):
    """Repeated ``name=value`` pairs, e.g. ``--const G=1 --const c=2``."""

    def to_python(self, value):
        if value in self.empty_values:
            return {}
        if isinstance(value, str):
            value = [value]
        overrides = {}
        for item in value:
            name, sep, number = str(item).partition('=')
            name = name.strip()
            if not sep or name not in CONSTANT_NAMES:
                raise ValidationError(
                    'Expected name=value with name in %(names)s, got %(item)r.',
                    params={'names': ', '.join(CONSTANT_NAMES), 'item': item},
                )
            try:
                overrides[name] = float(number)
            except ValueError:
                raise ValidationError('Constant %(name)s is not a number: %(number)r.',
                                      params={'name': name, 'number': number})
        return overrides


class PhysicsForm(forms.Form):
    """Unit system and constant overrides shared by every command"""
    units = forms.ChoiceField(choices=UNIT_CHOICES)
    const = ConstantOverridesField(required=False)

    def clean(self):
        cleaned_data = super().clean()
        if 'units' in cleaned_data and 'const' in cleaned_data:
            try:
                cleaned_data['cs'] = ConstantsSet.build(cleaned_data['units'], cleaned_data['const'])
            except DomainError as exc:
                raise ValidationError(str(exc))
        return cleaned_data


class OscillatorForm(PhysicsForm):
    mass = forms.FloatField(validators=[validate_positive])
    omega = forms.FloatField(validators=[validate_positive])
    nbar = forms.FloatField(required=False, validators=[validate_non_negative])
    d_re = forms.FloatField(required=False)
    d_im = forms.FloatField(required=False)
    trajectory_to = forms.FloatField(required=False, validators=[validate_positive])
    trajectory_points = forms.IntegerField(required=False, min_value=2, initial=20)

    def clean(self):
        cleaned_data = super().clean()
        nbar = cleaned_data.get('nbar')
        has_amplitude = cleaned_data.get('d_re') is not None or cleaned_data.get('d_im') is not None

        if nbar is not None and has_amplitude:
            raise ValidationError('Give either --nbar or --d-re/--d-im, not both.')
        if nbar is None and not has_amplitude and not self.has_error('nbar'):
            raise ValidationError('One of --nbar or --d-re/--d-im is required.')
        if has_amplitude:
            cleaned_data['d_re'] = cleaned_data.get('d_re') or 0.0
            cleaned_data['d_im'] = cleaned_data.get('d_im') or 0.0
        if cleaned_data.get('trajectory_points') is None:
            cleaned_data['trajectory_points'] = self.fields['trajectory_points'].initial
        return cleaned_data


class BlochForm(PhysicsForm):
    omega = forms.FloatField(validators=[validate_positive])
    t_hb = forms.FloatField(validators=[validate_positive])
    mass = forms.FloatField(required=False, validators=[validate_positive])
    q_max = forms.FloatField(required=False, validators=[validate_positive])
    q_points = forms.IntegerField(required=False, min_value=2)

    def clean(self):
        cleaned_data = super().clean()
        wants_grid = cleaned_data.get('q_points') is not None or cleaned_data.get('q_max') is not None
        if wants_grid and cleaned_data.get('mass') is None and not self.has_error('mass'):
            raise ValidationError('The q-grid needs --mass.')
        if wants_grid and cleaned_data.get('q_points') is None:
            cleaned_data['q_points'] = 41
        return cleaned_data


class FieldForm(PhysicsForm):
    spectrum = forms.CharField(required=False)
    radius = forms.FloatField(required=False, validators=[validate_positive])
    compton = forms.FloatField(required=False, validators=[validate_positive])
    field_mass = forms.FloatField(required=False, validators=[validate_positive])
    prefactor = forms.FloatField(required=False, initial=1.0, validators=[validate_positive])
    coupling = forms.FloatField(required=False, initial=1.0)
    profile = forms.ChoiceField(required=False, initial=SourceProfile.UNIFORM_BALL.value,
                                choices=[(profile.value, profile.value) for profile in SourceProfile])
    potential_at = forms.FloatField(required=False, validators=[validate_positive])

    def clean_spectrum(self):
        path = self.cleaned_data.get('spectrum')
        if path and not os.path.isfile(path):
            raise ValidationError('Spectrum file %(path)s does not exist.', params={'path': path})
        return path or None

    def clean(self):
        cleaned_data = super().clean()
        for name in ('prefactor', 'coupling', 'profile'):
            if cleaned_data.get(name) in (None, ''):
                cleaned_data[name] = self.fields[name].initial

        has_geometry = cleaned_data.get('radius') is not None
        if not cleaned_data.get('spectrum') and not has_geometry and not self.errors:
            raise ValidationError('Give --spectrum, or --radius with --compton or --field-mass.')
        if has_geometry:
            given = [name for name in ('compton', 'field_mass') if cleaned_data.get(name) is not None]
            if len(given) != 1:
                raise ValidationError('--radius needs exactly one of --compton and --field-mass.')
        if cleaned_data.get('potential_at') is not None and not has_geometry:
            raise ValidationError('--potential-at needs the source geometry (--radius).')
        return cleaned_data


class BlackholeForm(PhysicsForm):
    solar_masses = forms.FloatField(required=False, validators=[validate_positive])
    mass = forms.FloatField(required=False, validators=[validate_positive])
    area = forms.FloatField(required=False, validators=[validate_positive])
    beta = forms.FloatField(required=False, initial=4.0, validators=[validate_positive])
    kappa = forms.IntegerField(required=False, initial=2, min_value=2)

    def clean(self):
        cleaned_data = super().clean()
        for name in ('beta', 'kappa'):
            if cleaned_data.get(name) is None and not self.has_error(name):
                cleaned_data[name] = self.fields[name].initial
        if self.errors:
            return cleaned_data

        given = [name for name in ('solar_masses', 'mass', 'area') if cleaned_data.get(name) is not None]
        if len(given) != 1:
            raise ValidationError('Give exactly one of --solar-masses, --mass and --area.')
        cs = cleaned_data['cs']
        if given == ['solar_masses'] and cs.unit_system is not UnitSystem.SI:
            raise ValidationError('--solar-masses is available in SI units only; use --mass.')

        try:
            if given == ['solar_masses']:
                cleaned_data['config'] = BlackHoleConfig.from_solar_masses(
                    cleaned_data['solar_masses'], cs, beta=cleaned_data['beta'], kappa=cleaned_data['kappa'],
                )
            elif given == ['mass']:
                cleaned_data['config'] = BlackHoleConfig(
                    cs=cs, beta=cleaned_data['beta'], kappa=cleaned_data['kappa'], mass_M=cleaned_data['mass'],
                )
            else:
                cleaned_data['config'] = BlackHoleConfig(
                    cs=cs, beta=cleaned_data['beta'], kappa=cleaned_data['kappa'], area_A=cleaned_data['area'],
                )
        except DomainError as exc:
            raise ValidationError(str(exc))
        return cleaned_data


SWEEP_VARIABLES = {
    'oscillator': {'nbar': 'nbar', 'mass': 'mass'},
    'bloch': {'t-hb': 't_hb', 'mass': 'mass'},
    'field': {'radius': 'radius'},
    'blackhole': {'mass': 'mass'},
}


class SweepForm(forms.Form):
    target = forms.ChoiceField(choices=[(target, target) for target in SWEEP_VARIABLES])
    var = forms.CharField()
    start = forms.FloatField()
    stop = forms.FloatField()
    points = forms.IntegerField(min_value=2)
    scale = forms.ChoiceField(choices=[('log', 'log'), ('linear', 'linear')], required=False, initial='log')

    def clean(self):
        cleaned_data = super().clean()
        if not cleaned_data.get('scale'):
            cleaned_data['scale'] = self.fields['scale'].initial
        if self.errors:
            return cleaned_data

        target, var = cleaned_data['target'], cleaned_data['var']
        if var not in SWEEP_VARIABLES[target]:
            raise ValidationError(
                '%(target)s sweeps over %(allowed)s, not %(var)r.',
                params={'target': target, 'allowed': ', '.join(SWEEP_VARIABLES[target]), 'var': var},
            )
        if not cleaned_data['start'] < cleaned_data['stop']:
            raise ValidationError('--from must be below --to.')
        if cleaned_data['scale'] == 'log' and not cleaned_data['start'] > 0:
            raise ValidationError('A log sweep needs --from > 0.')
        cleaned_data['field_name'] = SWEEP_VARIABLES[target][var]
        return cleaned_data
