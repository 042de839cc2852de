use crate::category::{Category, CategoryError};

/// One object, one morphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZeroCategory;

impl Category for ZeroCategory {
    type Obj = ();
    type Mor = ();

    fn name(&self) -> String {
        "ZeroCategory".into()
    }

    fn zero_object(&self) {}

    fn source(&self, _f: &()) {}

    fn target(&self, _f: &()) {}

    fn identity(&self, _x: &()) {}

    fn zero_morphism(&self, _x: &(), _y: &()) {}

    fn compose(&self, _g: &(), _f: &()) -> Result<(), CategoryError> {
        Ok(())
    }

    fn kernel(&self, _f: &()) {}

    fn cokernel(&self, _f: &()) {}

    fn pullback(&self, _f: &(), _g: &()) -> Result<((), ()), CategoryError> {
        Ok(((), ()))
    }

    fn pushout(&self, _i: &(), _g: &()) -> Result<((), ()), CategoryError> {
        Ok(((), ()))
    }

    fn objects(&self) -> Result<Vec<()>, CategoryError> {
        Ok(vec![()])
    }

    fn hom(&self, _x: &(), _y: &()) -> Result<Vec<()>, CategoryError> {
        Ok(vec![()])
    }
}
